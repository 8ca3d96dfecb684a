#pragma once

#include <cmath>
#include <vector>

#include "hankelc/grid.hpp"
#include "hankelc/parallel.hpp"
#include "hankelc/quadrature.hpp"
#include "hankelc/symbolic.hpp"

namespace hankelc {

inline constexpr std::size_t kSupGridPoints = 200;
inline constexpr double kSupGridStart = 1e-3;

/// {0} ∪ geomspace(1e-3, R, 200) per axis, R from the Gaussian rate.
inline GridSpec default_sup_grid(const SymbolicHFunction& phi, std::size_t points = kSupGridPoints) {
    if (phi.decay == 0) throw DecayRequired("seminorms need decay > 0");
    std::vector<double> axis{0.0};
    for (double x : geomspace(kSupGridStart, truncation_radius(to_double(phi.decay)), points)) axis.push_back(x);
    return GridSpec::uniform_axes(phi.dim(), axis);
}

namespace detail {

// sup over the grid of |(1 + ||x||^2)^m v(x)|; v is evaluable at x = 0.
inline double weighted_sup(const NumericUForm& v, std::uint32_t m, const GridSpec& grid, unsigned threads) {
    const std::size_t total = grid.total();
    const unsigned t = resolve_threads(threads);
    const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(t * 4, total));
    std::vector<double> best(chunks, 0.0);
    parallel_for(chunks, t, [&](std::size_t c) {
        std::vector<double> x(grid.dim());
        double b = 0.0;
        for (std::size_t f = c * total / chunks; f < (c + 1) * total / chunks; ++f) {
            grid.point(f, x);
            double r2 = 0.0;
            for (double y : x) r2 += y * y;
            b = std::max(b, std::abs(std::pow(1.0 + r2, static_cast<double>(m)) * v(x)));
        }
        best[c] = b;
    });
    double out = 0.0;
    for (double b : best) out = std::max(out, b);
    return out;
}

inline void check_seminorm_args(const MultiIndex& k, const MuVector& mu, const SymbolicHFunction& phi,
                                const GridSpec& grid) {
    if (phi.decay == 0) throw DecayRequired("seminorms need decay > 0");
    if (!(phi.mu == mu)) throw DimensionMismatch("seminorm: order mismatch");
    if (k.size() != mu.size() || grid.dim() != mu.size()) throw DimensionMismatch("seminorm: dimension mismatch");
}

}  // namespace detail

/// γ_{m,k}(φ) = sup |(1 + ||x||^2)^m T^k{x^{-μ-1/2} φ}|.
inline double seminorm_gamma(std::uint32_t m, const MultiIndex& k, const MuVector& mu, const SymbolicHFunction& phi,
                             const GridSpec& grid, unsigned threads = 0) {
    detail::check_seminorm_args(k, mu, phi, grid);
    return detail::weighted_sup(NumericUForm(apply_Tk(k, phi.upart())), m, grid, threads);
}

/// λ_{m,k}(φ) = sup |(1 + ||x||^2)^m x^{-μ-1/2} S^k φ|.
inline double seminorm_lambda(std::uint32_t m, const MultiIndex& k, const MuVector& mu,
                              const SymbolicHFunction& phi, const GridSpec& grid, unsigned threads = 0) {
    detail::check_seminorm_args(k, mu, phi, grid);
    return detail::weighted_sup(NumericUForm(apply_Sk_upart(k, mu, phi.upart())), m, grid, threads);
}

/// ρ_R(φ) = Σ_{m <= R, |k| <= R} λ_{m,k}(φ).
inline double seminorm_rho(std::uint32_t R, const MuVector& mu, const SymbolicHFunction& phi, const GridSpec& grid,
                           unsigned threads = 0) {
    double s = 0.0;
    for (std::uint32_t m = 0; m <= R; ++m)
        for (const auto& k : mi_graded_enumerate(mu.size(), R)) s += seminorm_lambda(m, k, mu, phi, grid, threads);
    return s;
}

struct SeminormComparison {
    double lambda = 0.0;
    double bound = 0.0;  ///< Σ_l |b_{l,k}| γ_{m+|l|, k+l}
    double gamma = 0.0;  ///< γ_{m,k}, for the observational ratio γ / λ
    bool holds = false;
};

/// λ_{m,k} <= Σ_l |b_{l,k}| γ_{m+|l|,k+l} on one grid, with a relative rounding slack.
inline SeminormComparison compare_seminorms(std::uint32_t m, const MultiIndex& k, const MuVector& mu,
                                            const SymbolicHFunction& phi, const GridSpec& grid,
                                            unsigned threads = 0) {
    SeminormComparison c;
    c.lambda = seminorm_lambda(m, k, mu, phi, grid, threads);
    c.gamma = seminorm_gamma(m, k, mu, phi, grid, threads);
    for (const auto& [l, b] : koh_zemanian_coeffs(k, mu))
        c.bound += std::abs(to_double(b)) *
                   seminorm_gamma(m + static_cast<std::uint32_t>(l.length()), k + l, mu, phi, grid, threads);
    c.holds = c.lambda <= c.bound * (1 + 1e-12);
    return c;
}

}  // namespace hankelc
