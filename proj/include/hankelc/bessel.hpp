#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "hankelc/error.hpp"
#include "hankelc/multiindex.hpp"
#include "hankelc/rational.hpp"

namespace hankelc {

/// Order vector mu = (mu_1, ..., mu_n), each mu_i >= -1/2.
///
/// Orders are held exactly; decimal input is converted to its exact
/// rational value so that operator images stay in the rational field.
class MuVector {
public:
    MuVector() = default;
    explicit MuVector(std::vector<Rational> orders) : orders_(std::move(orders)) { validate(); }
    MuVector(std::initializer_list<Rational> orders) : orders_(orders) { validate(); }

    /// Convenience: n copies of the same order.
    static MuVector uniform(std::size_t n, const Rational& mu) {
        return MuVector(std::vector<Rational>(n, mu));
    }

    std::size_t size() const noexcept { return orders_.size(); }
    const Rational& operator[](std::size_t i) const { return orders_[i]; }
    double value(std::size_t i) const { return to_double(orders_[i]); }
    const std::vector<Rational>& orders() const noexcept { return orders_; }

    /// mu + k (shifted orders).
    MuVector shifted(const MultiIndex& k) const {
        if (k.size() != size()) throw DimensionMismatch("mu and k dimensions differ");
        std::vector<Rational> out = orders_;
        for (std::size_t i = 0; i < size(); ++i) out[i] += k[i];
        return MuVector(std::move(out));
    }

    bool operator==(const MuVector&) const = default;

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < size(); ++i) {
            if (i) s += ",";
            s += format_rational(orders_[i]);
        }
        return s + ")";
    }

private:
    void validate() const {
        if (orders_.empty()) throw DomainError("mu must have at least one component");
        for (std::size_t i = 0; i < orders_.size(); ++i)
            if (orders_[i] < make_rational(-1, 2))
                throw DomainError("mu_" + std::to_string(i + 1) + " = " +
                                  format_rational(orders_[i]) + " violates mu_i >= -1/2");
    }

    std::vector<Rational> orders_;
};

/// Largest argument accepted by bessel_j unless overridden.
inline constexpr double kDefaultBesselZMax = 200.0;

/// Γ(x) for x > 0.
inline double gamma_fn(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("gamma_fn requires x > 0");
    return std::tgamma(x);
}

namespace detail {

inline constexpr double kSeriesSwitch = 12.0;

// sum_k (-1)^k (z^2/4)^k / (k! Γ(k+ν+1)), i.e. (z/2)^{-ν} J_ν(z).
// Neumaier-compensated; cancellation is bounded for z <= kSeriesSwitch.
inline double bessel_series_scaled(double nu, double z) {
    const double q = -0.25 * z * z;
    double term = 1.0 / std::tgamma(nu + 1.0);
    double sum = term;
    double comp = 0.0;
    for (int k = 1; k < 500; ++k) {
        term *= q / (static_cast<double>(k) * (nu + k));
        const double t = sum + term;
        if (std::abs(sum) >= std::abs(term))
            comp += (sum - t) + term;
        else
            comp += (term - t) + sum;
        sum = t;
        if (std::abs(term) < 1e-17 * std::abs(sum) && k > 2) break;
    }
    return sum + comp;
}

// J_ν(x) for ν >= 0 and x >= 2 by the continued-fraction method of Steed
// (CF1 for J'/J, downward recurrence to |mu| <= 1/2, CF2 for p + iq).
inline double bessel_j_steed(double nu, double x) {
    constexpr int kMaxIter = 100000;
    constexpr double kEps = 1e-16;
    constexpr double kTiny = 1e-300;
    const int nl = std::max(0, static_cast<int>(nu - x + 1.5));
    const double xmu = nu - nl;
    const double xmu2 = xmu * xmu;
    const double xi = 1.0 / x;
    const double xi2 = 2.0 * xi;
    const double w = xi2 / std::numbers::pi;

    int isign = 1;
    double h = nu * xi;
    if (h < kTiny) h = kTiny;
    double b = xi2 * nu;
    double d = 0.0;
    double c = h;
    int i = 0;
    for (; i < kMaxIter; ++i) {
        b += xi2;
        d = b - d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b - 1.0 / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = c * d;
        h *= del;
        if (d < 0.0) isign = -isign;
        if (std::abs(del - 1.0) <= kEps) break;
    }
    if (i >= kMaxIter) throw DomainError("bessel_j: continued fraction CF1 did not converge");

    double rjl = isign * kTiny;
    double rjpl = h * rjl;
    const double rjl1 = rjl;
    double fact = nu * xi;
    for (int l = nl - 1; l >= 0; --l) {
        const double rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if (rjl == 0.0) rjl = kEps;
    const double f = rjpl / rjl;

    double a = 0.25 - xmu2;
    double p = -0.5 * xi;
    double q = 1.0;
    const double br = 2.0 * x;
    double bi = 2.0;
    fact = a * xi / (p * p + q * q);
    double cr = br + q * fact;
    double ci = bi + p * fact;
    double den = br * br + bi * bi;
    double dr = br / den;
    double di = -bi / den;
    double dlr = cr * dr - ci * di;
    double dli = cr * di + ci * dr;
    double temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    for (i = 1; i < kMaxIter; ++i) {
        a += 2 * i;
        bi += 2.0;
        dr = a * dr + br;
        di = a * di + bi;
        if (std::abs(dr) + std::abs(di) < kTiny) dr = kTiny;
        fact = a / (cr * cr + ci * ci);
        cr = br + cr * fact;
        ci = bi - ci * fact;
        if (std::abs(cr) + std::abs(ci) < kTiny) cr = kTiny;
        den = dr * dr + di * di;
        dr /= den;
        di /= -den;
        dlr = cr * dr - ci * di;
        dli = cr * di + ci * dr;
        temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        if (std::abs(dlr - 1.0) + std::abs(dli) <= kEps) break;
    }
    if (i >= kMaxIter) throw DomainError("bessel_j: continued fraction CF2 did not converge");

    const double gam = (p - f) / q;
    double rjmu = std::sqrt(w / ((p - f) * gam + q));
    rjmu = std::copysign(rjmu, rjl);
    return rjl1 * (rjmu / rjl);
}

inline void check_bessel_args(double nu, double z, double z_max) {
    if (!(nu >= -0.5) || !std::isfinite(nu))
        throw DomainError("bessel order must satisfy nu >= -1/2");
    if (!(z >= 0.0) || !std::isfinite(z)) throw DomainError("bessel argument must satisfy z >= 0");
    if (z > z_max)
        throw DomainError("bessel argument " + std::to_string(z) + " exceeds z_max " +
                          std::to_string(z_max));
}

}  // namespace detail

/// Bessel function of the first kind J_ν(z), real order ν >= -1/2, z in [0, z_max].
inline double bessel_j(double nu, double z, double z_max = kDefaultBesselZMax) {
    detail::check_bessel_args(nu, z, z_max);
    if (z == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    if (z <= detail::kSeriesSwitch)
        return std::pow(0.5 * z, nu) * detail::bessel_series_scaled(nu, z);
    if (nu >= 0.0) return detail::bessel_j_steed(nu, z);
    // -1/2 <= ν < 0: downward three-term recurrence from orders ν+1, ν+2.
    const double j1 = detail::bessel_j_steed(nu + 1.0, z);
    const double j2 = detail::bessel_j_steed(nu + 2.0, z);
    return 2.0 * (nu + 1.0) / z * j1 - j2;
}

/// z^{-ν} J_ν(z), finite at z = 0 where it equals 1 / (2^ν Γ(ν+1)).
inline double reduced_bessel(double nu, double z, double z_max = kDefaultBesselZMax) {
    detail::check_bessel_args(nu, z, z_max);
    if (z <= detail::kSeriesSwitch) return std::pow(2.0, -nu) * detail::bessel_series_scaled(nu, z);
    return bessel_j(nu, z, z_max) * std::pow(z, -nu);
}

/// C_μ = Π 2^{μ_i} Γ(μ_i + 1).
inline double c_mu(const MuVector& mu) {
    double r = 1.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        const double m = mu.value(i);
        r *= std::pow(2.0, m) * gamma_fn(m + 1.0);
    }
    return r;
}

/// Exact C_μ / C_{μ+k} = Π 1 / (2^{k_i} (μ_i+1)(μ_i+2)...(μ_i+k_i)).
inline Rational c_mu_ratio_exact(const MuVector& mu, const MultiIndex& k) {
    if (k.size() != mu.size()) throw DimensionMismatch("mu and k dimensions differ");
    Rational r = 1;
    for (std::size_t i = 0; i < mu.size(); ++i)
        for (std::uint32_t j = 1; j <= k[i]; ++j) r /= 2 * (mu[i] + j);
    return r;
}

/// C_k^μ = (-1)^{|k|} C_μ / C_{μ+k}, exact.
inline Rational c_k_mu_exact(const MuVector& mu, const MultiIndex& k) {
    Rational r = c_mu_ratio_exact(mu, k);
    return (k.length() % 2 == 0) ? r : Rational(-r);
}

inline double c_k_mu(const MuVector& mu, const MultiIndex& k) {
    return to_double(c_k_mu_exact(mu, k));
}

}  // namespace hankelc
