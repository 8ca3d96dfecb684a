#pragma once

#include <boost/math/special_functions/legendre.hpp>

#include <cmath>
#include <string>
#include <vector>

#include "hankelc/error.hpp"

namespace hankelc {

/// Composite rule on [0, radius]: nodes strictly increasing in (0, radius).
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    double radius = 0.0;
    std::size_t panels = 0;

    std::size_t size() const noexcept { return nodes.size(); }
};

inline constexpr std::size_t kDefaultQuadraturePointCap = 1u << 20;
inline constexpr std::size_t kDefaultPointsPerPanel = 24;
inline constexpr std::size_t kDefaultPanels = 16;
inline constexpr double kDefaultTailTolerance = 1e-14;

/// Gauss–Legendre nodes/weights on [-1, 1], ascending.
inline void gauss_legendre(std::size_t points, std::vector<double>& x, std::vector<double>& w) {
    using boost::math::legendre_p_prime;
    const auto pos = boost::math::legendre_p_zeros<double>(static_cast<int>(points));
    x.clear();
    w.clear();
    auto weight = [&](double t) {
        const double dp = legendre_p_prime(static_cast<int>(points), t);
        return 2.0 / ((1.0 - t * t) * dp * dp);
    };
    for (auto it = pos.rbegin(); it != pos.rend(); ++it) {
        if (*it == 0.0) continue;
        x.push_back(-*it);
        w.push_back(weight(*it));
    }
    for (double t : pos) {
        x.push_back(t);
        w.push_back(weight(t));
    }
}

/// Composite Gauss–Legendre rule on [0, X] with equal panels.
inline QuadratureRule build_quadrature(double radius, std::size_t points_per_panel, std::size_t panels,
                                       std::size_t cap = kDefaultQuadraturePointCap) {
    if (!(radius > 0.0) || points_per_panel == 0 || panels == 0)
        throw DomainError("build_quadrature: radius, points and panels must be positive");
    if (points_per_panel * panels > cap)
        throw LimitExceeded("quadrature with " + std::to_string(points_per_panel * panels) +
                            " points exceeds cap " + std::to_string(cap));
    std::vector<double> x, w;
    gauss_legendre(points_per_panel, x, w);
    QuadratureRule rule;
    rule.radius = radius;
    rule.panels = panels;
    const double h = radius / static_cast<double>(panels);
    for (std::size_t p = 0; p < panels; ++p) {
        const double a = h * static_cast<double>(p);
        for (std::size_t j = 0; j < x.size(); ++j) {
            rule.nodes.push_back(a + 0.5 * h * (x[j] + 1.0));
            rule.weights.push_back(0.5 * h * w[j]);
        }
    }
    return rule;
}

/// X = c^{-1/2} sqrt(2 ln(1/τ)): e^{-cX²} = τ², leaving a factor τ for polynomial growth.
inline double truncation_radius(double decay, double tail_tolerance = kDefaultTailTolerance) {
    if (!(decay > 0.0)) throw DecayRequired("truncation radius needs a positive decay rate");
    return std::sqrt(2.0 * std::log(1.0 / tail_tolerance) / decay);
}

/// Quadrature settings overridable from the command line.
struct QuadratureConfig {
    std::size_t points_per_panel = kDefaultPointsPerPanel;
    std::size_t panels = kDefaultPanels;
    double radius = 0.0;  ///< 0 selects the analytic truncation radius
    double tail_tolerance = kDefaultTailTolerance;

    QuadratureRule rule_for_decay(double decay) const {
        const double X = radius > 0.0 ? radius : truncation_radius(decay, tail_tolerance);
        return build_quadrature(X, points_per_panel, panels);
    }
};

}  // namespace hankelc
