#pragma once

#include <cmath>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hankelc/error.hpp"
#include "hankelc/multiindex.hpp"
#include "hankelc/rational.hpp"

namespace hankelc {

/// Q(x_1^2, ..., x_n^2) = Σ_k q_k x^{2k}, exact rational coefficients.
/// Keys are the half-exponents k; zero coefficients are never stored.
class EvenPolynomial {
public:
    using Terms = std::map<MultiIndex, Rational>;

    explicit EvenPolynomial(std::size_t n = 1) : n_(n) {
        if (n == 0) throw DimensionMismatch("polynomial dimension must be >= 1");
    }

    static EvenPolynomial constant(std::size_t n, const Rational& c) {
        EvenPolynomial p(n);
        p.add_term(MultiIndex(n), c);
        return p;
    }
    static EvenPolynomial monomial(const MultiIndex& k, const Rational& c = 1) {
        EvenPolynomial p(k.size());
        p.add_term(k, c);
        return p;
    }

    std::size_t dim() const noexcept { return n_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    Rational coeff(const MultiIndex& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Maximum |k| over stored terms (0 for the zero polynomial).
    std::uint64_t degree() const {
        std::uint64_t d = 0;
        for (const auto& [k, q] : terms_) d = std::max(d, k.length());
        return d;
    }

    void add_term(const MultiIndex& k, const Rational& c) {
        if (k.size() != n_) throw DimensionMismatch("term dimension " + std::to_string(k.size()) +
                                                    " in " + std::to_string(n_) + "-variable polynomial");
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    EvenPolynomial& operator+=(const EvenPolynomial& o) {
        check(o);
        for (const auto& [k, q] : o.terms_) add_term(k, q);
        return *this;
    }
    EvenPolynomial& operator-=(const EvenPolynomial& o) {
        check(o);
        for (const auto& [k, q] : o.terms_) add_term(k, -q);
        return *this;
    }
    EvenPolynomial& operator*=(const Rational& c) {
        if (c == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [k, q] : terms_) q *= c;
        return *this;
    }
    friend EvenPolynomial operator+(EvenPolynomial a, const EvenPolynomial& b) { return a += b; }
    friend EvenPolynomial operator-(EvenPolynomial a, const EvenPolynomial& b) { return a -= b; }
    friend EvenPolynomial operator*(EvenPolynomial a, const Rational& c) { return a *= c; }
    friend EvenPolynomial operator*(const Rational& c, EvenPolynomial a) { return a *= c; }

    friend EvenPolynomial operator*(const EvenPolynomial& a, const EvenPolynomial& b) {
        a.check(b);
        EvenPolynomial r(a.n_);
        for (const auto& [ka, qa] : a.terms_)
            for (const auto& [kb, qb] : b.terms_) r.add_term(ka + kb, qa * qb);
        return r;
    }

    /// Multiply by x^{2l}.
    EvenPolynomial shifted(const MultiIndex& l) const {
        check_index(l);
        EvenPolynomial r(n_);
        for (const auto& [k, q] : terms_) r.terms_.emplace(k + l, q);
        return r;
    }

    /// ∂/∂(x_i^2) applied termwise: x^{2k} -> k_i x^{2(k-e_i)}.
    EvenPolynomial d_square(std::size_t axis) const {
        EvenPolynomial r(n_);
        for (const auto& [k, q] : terms_) {
            if (k[axis] == 0) continue;
            MultiIndex km = k;
            km[axis] -= 1;
            r.add_term(km, q * k[axis]);
        }
        return r;
    }

    double eval(std::span<const double> x) const {
        if (x.size() != n_) throw DimensionMismatch("evaluation point dimension mismatch");
        double s = 0.0;
        for (const auto& [k, q] : terms_) {
            double m = to_double(q);
            for (std::size_t i = 0; i < n_; ++i) m *= std::pow(x[i] * x[i], static_cast<double>(k[i]));
            s += m;
        }
        return s;
    }

    bool operator==(const EvenPolynomial& o) const { return n_ == o.n_ && terms_ == o.terms_; }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [k, q] : terms_) {
            if (!s.empty()) s += " + ";
            s += format_rational(q) + "*x^2" + k.str();
        }
        return s;
    }

    void check(const EvenPolynomial& o) const {
        if (n_ != o.n_) throw DimensionMismatch("polynomial dimensions differ");
    }

private:
    void check_index(const MultiIndex& k) const {
        if (k.size() != n_) throw DimensionMismatch("multi-index dimension mismatch");
    }

    std::size_t n_;
    Terms terms_;
};

/// u-part u(x) = Q(x^2) exp(-c ||x||^2) of a function x^{μ+1/2} u(x).
/// All T- and S-calculus acts on this object.
struct UForm {
    EvenPolynomial poly;
    Rational decay = 0;

    std::size_t dim() const noexcept { return poly.dim(); }

    double eval(std::span<const double> x) const {
        double r2 = 0.0;
        for (double v : x) r2 += v * v;
        const double g = decay == 0 ? 1.0 : std::exp(-to_double(decay) * r2);
        return poly.eval(x) * g;
    }

    bool operator==(const UForm& o) const {
        if (poly.is_zero() && o.poly.is_zero()) return poly.dim() == o.poly.dim();
        return poly == o.poly && decay == o.decay;
    }
};

inline UForm operator*(const UForm& a, const UForm& b) {
    return UForm{a.poly * b.poly, a.decay + b.decay};
}

/// T_i = x_i^{-1} ∂/∂x_i on a u-form:
/// T_i(x^{2k} e^{-c||x||^2}) = (2 k_i x^{2(k-e_i)} - 2c x^{2k}) e^{-c||x||^2}.
inline UForm apply_T(std::size_t axis, const UForm& u) {
    if (axis >= u.dim()) throw DimensionMismatch("axis out of range");
    EvenPolynomial out = u.poly.d_square(axis) * Rational(2);
    if (u.decay != 0) out -= u.poly * (2 * u.decay);
    return UForm{std::move(out), u.decay};
}

/// T^k = T_n^{k_n} ... T_1^{k_1}.
inline UForm apply_Tk(const MultiIndex& k, UForm u) {
    if (k.size() != u.dim()) throw DimensionMismatch("T^k dimension mismatch");
    for (std::size_t i = 0; i < k.size(); ++i)
        for (std::uint32_t r = 0; r < k[i]; ++r) u = apply_T(i, u);
    return u;
}

/// Double-precision snapshot of a u-form for repeated evaluation.
class NumericUForm {
public:
    explicit NumericUForm(const UForm& u) : n_(u.dim()), decay_(to_double(u.decay)) {
        for (const auto& [k, q] : u.poly.terms()) {
            coeffs_.push_back(to_double(q));
            exps_.insert(exps_.end(), k.begin(), k.end());
        }
    }

    double operator()(std::span<const double> x) const {
        double r2 = 0.0;
        for (double v : x) r2 += v * v;
        double s = 0.0;
        for (std::size_t t = 0; t < coeffs_.size(); ++t) {
            double m = coeffs_[t];
            for (std::size_t i = 0; i < n_; ++i)
                for (std::uint32_t e = exps_[t * n_ + i]; e > 0; --e) m *= x[i] * x[i];
            s += m;
        }
        return decay_ == 0.0 ? s : s * std::exp(-decay_ * r2);
    }

private:
    std::size_t n_;
    double decay_;
    std::vector<double> coeffs_;
    std::vector<std::uint32_t> exps_;
};

}  // namespace hankelc
