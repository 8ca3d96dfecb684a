#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "hankelc/cutoff.hpp"
#include "hankelc/grid.hpp"
#include "hankelc/parallel.hpp"
#include "hankelc/symbolic.hpp"

namespace hankelc {

/// N(x^2) / D(x^2)^p.
class RationalFunction {
public:
    explicit RationalFunction(EvenPolynomial num) : RationalFunction(num, EvenPolynomial::constant(num.dim(), 1)) {}

    /// D must have a nonzero constant term and no zeros on the closed orthant.
    RationalFunction(EvenPolynomial num, EvenPolynomial den, std::uint32_t power = 1)
        : num_(std::move(num)), den_(std::move(den)), power_(power) {
        if (num_.dim() != den_.dim()) throw DimensionMismatch("numerator and denominator dimensions differ");
        OperatorPoly symbol(den_.dim());
        for (const auto& [k, q] : den_.terms()) symbol.add(k, q);
        if (den_.coeff(MultiIndex(den_.dim())) == 0)
            throw HypothesisFailed("denominator has zero constant term", -1);
        const auto rep = check_hypothesis(symbol);
        if (!rep.pass) throw HypothesisFailed("denominator: " + rep.reason, rep.failing_axis);
    }

    std::size_t dim() const noexcept { return num_.dim(); }
    const EvenPolynomial& numerator() const noexcept { return num_; }
    const EvenPolynomial& denominator() const noexcept { return den_; }
    std::uint32_t power() const noexcept { return power_; }

    /// T_i(N / D^p) = (T_i N · D - p N T_i D) / D^{p+1}.
    RationalFunction T(std::size_t axis) const {
        const EvenPolynomial tn = num_.d_square(axis) * Rational(2);
        const EvenPolynomial td = den_.d_square(axis) * Rational(2);
        EvenPolynomial next = tn * den_;
        next -= num_ * td * Rational(power_);
        return RationalFunction(std::move(next), den_, power_ + 1, Unchecked{});
    }

    RationalFunction Tk(const MultiIndex& k) const {
        if (k.size() != dim()) throw DimensionMismatch("T^k dimension mismatch");
        RationalFunction r = *this;
        for (std::size_t i = 0; i < k.size(); ++i)
            for (std::uint32_t s = 0; s < k[i]; ++s) r = r.T(i);
        return r;
    }

    double eval(std::span<const double> x) const {
        return NumericUForm(UForm{num_, 0})(x) / std::pow(NumericUForm(UForm{den_, 0})(x), power_);
    }

private:
    struct Unchecked {};
    RationalFunction(EvenPolynomial num, EvenPolynomial den, std::uint32_t power, Unchecked)
        : num_(std::move(num)), den_(std::move(den)), power_(power) {}

    EvenPolynomial num_, den_;
    std::uint32_t power_;
};

/// θ = R(x^2) χ(x) with χ one of 1, ψ, 1 - ψ.
struct MultiplierFunction {
    enum class Cut { None, Inner, Complement };

    RationalFunction rational;
    Cut cut = Cut::None;
    CutoffSpec cutoff{};

    std::size_t dim() const noexcept { return rational.dim(); }
};

/// Pointwise evaluator of T^k θ (Leibniz rule across the cutoff factor).
class MultiplierTk {
public:
    MultiplierTk(const MultiIndex& k, const MultiplierFunction& f) : f_(f) {
        using Cut = MultiplierFunction::Cut;
        const std::vector<MultiIndex> js = f.cut == Cut::None ? std::vector{MultiIndex(k.size())} : mi_below(k);
        for (const auto& j : js) {
            const auto r = f.rational.Tk(k - j);
            parts_.push_back({to_double(Rational(mi_binomial(k, j))), j, NumericUForm(UForm{r.numerator(), 0}),
                              NumericUForm(UForm{r.denominator(), 0}), r.power()});
        }
    }

    double operator()(std::span<const double> x) const {
        using Cut = MultiplierFunction::Cut;
        double s = 0.0;
        for (const auto& p : parts_) {
            double v = p.weight * p.num(x) / std::pow(p.den(x), p.power);
            if (f_.cut != Cut::None) {
                double t = f_.cutoff.Tk(p.j, x);
                if (f_.cut == Cut::Complement) t = (p.j.is_zero() ? 1.0 : 0.0) - t;
                v *= t;
            }
            s += v;
        }
        return s;
    }

private:
    struct Part {
        double weight;
        MultiIndex j;
        NumericUForm num, den;
        std::uint32_t power;
    };
    const MultiplierFunction& f_;
    std::vector<Part> parts_;
};

struct MultiplierEntry {
    int n_k = 0;        ///< weight exponent used: min(0, n_max)
    int n_max = 0;      ///< largest n in [-20, 20] keeping (1 + ||x||^2)^n T^k θ bounded
    double growth = 0;  ///< observed exponent g with |T^k θ| ~ ||x||^g at infinity
    bool bounded = true;
    double C = 0.0;     ///< sup (1 + ||x||^2)^{n_k} |T^k θ| on the test grid
};

struct MultiplierReport {
    std::map<MultiIndex, MultiplierEntry> entries;
};

inline constexpr int kMultiplierExponentBound = 20;
inline constexpr double kMultiplierGridRadius = 1e3;
inline constexpr double kGrowthProbeRadius = 1e4;

/// {0} ∪ geomspace(1e-3, R, points), plus a uniform pass over [0, 2a] when a cutoff is present.
inline GridSpec default_multiplier_grid(const MultiplierFunction& f, std::size_t points = 200) {
    std::vector<double> axis{0.0};
    for (double x : geomspace(1e-3, kMultiplierGridRadius, points)) axis.push_back(x);
    if (f.cut != MultiplierFunction::Cut::None)
        for (double x : linspace(0.0, 2 * f.cutoff.outer(), points)) axis.push_back(x);
    std::sort(axis.begin(), axis.end());
    axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
    return GridSpec::uniform_axes(f.dim(), axis);
}

namespace detail {

// Unit directions in the closed orthant from a simplex lattice.
inline std::vector<std::vector<double>> orthant_directions(std::size_t n) {
    std::vector<std::vector<double>> out;
    const std::uint32_t d = n == 1 ? 1 : (n == 2 ? 32 : 8);
    for (const auto& k : mi_of_length(n, d)) {
        std::vector<double> w(n);
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) norm += (w[i] = static_cast<double>(k[i])) * w[i];
        for (auto& v : w) v /= std::sqrt(norm);
        out.push_back(std::move(w));
    }
    return out;
}

// Largest exponent g with |v(rω)| ~ r^g along the probed rays; -inf when v
// vanishes far out on every ray.
inline double growth_exponent(const MultiplierTk& v, std::size_t n) {
    double g = -std::numeric_limits<double>::infinity();
    std::vector<double> a(n), b(n);
    for (const auto& w : orthant_directions(n)) {
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = kGrowthProbeRadius * w[i];
            b[i] = 2 * kGrowthProbeRadius * w[i];
        }
        const double va = std::abs(v(a)), vb = std::abs(v(b));
        if (va == 0.0 || vb == 0.0) continue;
        double e = std::log2(vb / va);
        if (std::abs(e - std::round(e)) < 0.05) e = std::round(e);
        g = std::max(g, e);
    }
    return g;
}

}  // namespace detail

/// For |k| <= K: the weight exponent n_k and the bound C in |(1 + ||x||^2)^{n_k} T^k θ| <= C.
inline MultiplierReport multiplier_check(const MultiplierFunction& f, std::uint32_t K,
                                         const std::optional<GridSpec>& grid_opt = std::nullopt,
                                         unsigned threads = 0) {
    const std::size_t n = f.dim();
    const GridSpec grid = grid_opt ? *grid_opt : default_multiplier_grid(f);
    if (grid.dim() != n) throw DimensionMismatch("multiplier grid dimension mismatch");
    MultiplierReport rep;
    for (const auto& k : mi_graded_enumerate(n, K)) {
        const MultiplierTk v(k, f);
        MultiplierEntry e;
        e.growth = detail::growth_exponent(v, n);
        if (std::isinf(e.growth)) {
            e.n_max = kMultiplierExponentBound;
        } else {
            e.n_max = static_cast<int>(std::floor(-e.growth / 2));
            if (e.n_max < -kMultiplierExponentBound) e.bounded = false;
            e.n_max = std::clamp(e.n_max, -kMultiplierExponentBound, kMultiplierExponentBound);
        }
        e.n_k = std::min(0, e.n_max);
        const std::size_t total = grid.total();
        const unsigned t = resolve_threads(threads);
        const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(t * 4, total));
        std::vector<double> best(chunks, 0.0);
        parallel_for(chunks, t, [&](std::size_t c) {
            std::vector<double> x(n);
            double b = 0.0;
            for (std::size_t fl = c * total / chunks; fl < (c + 1) * total / chunks; ++fl) {
                grid.point(fl, x);
                double r2 = 0.0;
                for (double y : x) r2 += y * y;
                b = std::max(b, std::pow(1.0 + r2, e.n_k) * std::abs(v(x)));
            }
            best[c] = b;
        });
        e.C = *std::max_element(best.begin(), best.end());
        rep.entries[k] = e;
    }
    return rep;
}

}  // namespace hankelc
