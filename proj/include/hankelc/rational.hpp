#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "hankelc/error.hpp"

namespace hankelc {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline Rational make_rational(long long num, long long den = 1) {
    if (den == 0) throw DomainError("rational with zero denominator");
    return Rational(BigInt(num), BigInt(den));
}

/// "num/den" when the denominator is not one, plain integer otherwise.
inline std::string format_rational(const Rational& q) {
    const BigInt num = boost::multiprecision::numerator(q);
    const BigInt den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

namespace detail {

inline BigInt parse_integer(std::string_view s, std::string_view whole) {
    if (s.empty()) throw SpecError("malformed rational '" + std::string(whole) + "'");
    std::size_t pos = 0;
    if (s[0] == '+' || s[0] == '-') pos = 1;
    if (pos == s.size()) throw SpecError("malformed rational '" + std::string(whole) + "'");
    for (std::size_t i = pos; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw SpecError("malformed rational '" + std::string(whole) + "'");
    const bool negative = s[0] == '-';
    std::string_view digits = s.substr(pos);
    while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
    BigInt v{std::string(digits)};
    return negative ? BigInt(-v) : v;
}

inline BigInt pow10(unsigned e) {
    BigInt r = 1;
    for (unsigned i = 0; i < e; ++i) r *= 10;
    return r;
}

/// Exact value of a decimal literal such as -1.25e-3.
inline Rational parse_decimal(std::string_view s, std::string_view whole) {
    std::size_t epos = s.find_first_of("eE");
    long long exponent = 0;
    std::string_view mant = s.substr(0, epos);
    if (epos != std::string_view::npos) {
        exponent = parse_integer(s.substr(epos + 1), whole).convert_to<long long>();
    }
    bool negative = false;
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
        negative = mant[0] == '-';
        mant.remove_prefix(1);
    }
    std::size_t dot = mant.find('.');
    std::string digits(mant.substr(0, dot));
    if (dot != std::string_view::npos) {
        std::string_view frac = mant.substr(dot + 1);
        digits += frac;
        exponent -= static_cast<long long>(frac.size());
    }
    if (digits.empty()) throw SpecError("malformed rational '" + std::string(whole) + "'");
    BigInt num = parse_integer(digits, whole);
    if (negative) num = -num;
    if (exponent > 400 || exponent < -400)
        throw SpecError("exponent out of range in '" + std::string(whole) + "'");
    if (exponent >= 0) return Rational(num * pow10(static_cast<unsigned>(exponent)));
    return Rational(num, pow10(static_cast<unsigned>(-exponent)));
}

}  // namespace detail

/// Parses "p/q", integers, and decimal literals exactly.
inline Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) throw SpecError("empty rational");
    std::size_t slash = s.find('/');
    if (slash != std::string_view::npos) {
        BigInt num = detail::parse_integer(s.substr(0, slash), text);
        BigInt den = detail::parse_integer(s.substr(slash + 1), text);
        if (den == 0) throw SpecError("zero denominator in '" + std::string(text) + "'");
        return Rational(num, den);
    }
    return detail::parse_decimal(s, text);
}

}  // namespace hankelc
