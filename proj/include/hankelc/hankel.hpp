#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "hankelc/bessel.hpp"
#include "hankelc/grid.hpp"
#include "hankelc/parallel.hpp"
#include "hankelc/quadrature.hpp"
#include "hankelc/symbolic.hpp"

namespace hankelc {

/// Scalar field on (0,∞) or on the open orthant.
using ScalarField1 = std::function<double(double)>;
using ScalarFieldN = std::function<double(std::span<const double>)>;

/// Quadrature kernel for one axis: K[o][j] over outputs y_o and nodes x_j.
///
/// kind Full:    w_j sqrt(x_j y_o) J_μ(x_j y_o)
/// kind Reduced: w_j x_j^{μ+1/2+2r} (x_j y_o)^{-(μ+r)} J_{μ+r}(x_j y_o)
///
/// The Reduced kernel gives the u-part y^{-μ-1/2} h_μ f(y) for r = 0 and,
/// with sign (-1)^r, its r-th T-derivative.
struct AxisKernel {
    enum class Kind { Full, Reduced };

    std::vector<double> nodes;
    std::vector<double> outputs;
    std::vector<double> matrix;  // outputs.size() x nodes.size()

    double at(std::size_t o, std::size_t j) const { return matrix[o * nodes.size() + j]; }
};

inline AxisKernel make_axis_kernel(double mu, const QuadratureRule& rule, const std::vector<double>& ys,
                                   AxisKernel::Kind kind = AxisKernel::Kind::Full, unsigned shift = 0,
                                   unsigned threads = 0, double z_max = kDefaultBesselZMax) {
    AxisKernel k{rule.nodes, ys, std::vector<double>(ys.size() * rule.size())};
    const std::size_t nn = rule.size();
    const double order = mu + shift;
    std::vector<double> prefix(nn);
    for (std::size_t j = 0; j < nn; ++j)
        prefix[j] = kind == AxisKernel::Kind::Full
                        ? rule.weights[j] * std::sqrt(rule.nodes[j])
                        : rule.weights[j] * std::pow(rule.nodes[j], mu + 0.5 + 2.0 * shift);
    parallel_for(ys.size(), resolve_threads(threads), [&](std::size_t o) {
        const double y = ys[o];
        if (kind == AxisKernel::Kind::Full && !(y >= 0.0))
            throw DomainError("transform output points must be >= 0");
        const double sy = std::sqrt(y);
        for (std::size_t j = 0; j < nn; ++j) {
            const double z = rule.nodes[j] * y;
            k.matrix[o * nn + j] = kind == AxisKernel::Kind::Full
                                       ? prefix[j] * sy * bessel_j(order, z, z_max)
                                       : prefix[j] * reduced_bessel(order, z, z_max);
        }
    });
    return k;
}

/// (h_α f)(y) ≈ Σ_j w_j f(x_j) sqrt(x_j y) J_α(x_j y).
inline GridFunction hankel_1d(double alpha, const ScalarField1& f, const std::vector<double>& ys,
                              const QuadratureRule& rule, unsigned threads = 0) {
    for (double y : ys)
        if (!(y > 0.0)) throw DomainError("hankel_1d output points must be > 0");
    const AxisKernel k = make_axis_kernel(alpha, rule, ys, AxisKernel::Kind::Full, 0, threads);
    std::vector<double> fx(rule.size());
    for (std::size_t j = 0; j < rule.size(); ++j) fx[j] = f(rule.nodes[j]);
    std::vector<double> out(ys.size(), 0.0);
    for (std::size_t o = 0; o < ys.size(); ++o) {
        double s = 0.0;
        for (std::size_t j = 0; j < rule.size(); ++j) s += k.at(o, j) * fx[j];
        out[o] = s;
    }
    return GridFunction(GridSpec({ys}), std::move(out));
}

enum class TransformPath { AxisByAxis, Direct };

namespace detail {

// Contracts axis `axis` of a row-major tensor with shape `shape` against K.
inline std::vector<double> contract_axis(const std::vector<double>& data, std::vector<std::size_t>& shape,
                                         std::size_t axis, const AxisKernel& k, unsigned threads) {
    std::size_t outer = 1, inner = 1;
    for (std::size_t a = 0; a < axis; ++a) outer *= shape[a];
    for (std::size_t a = axis + 1; a < shape.size(); ++a) inner *= shape[a];
    const std::size_t nin = shape[axis];
    const std::size_t nout = k.outputs.size();
    std::vector<double> out(outer * nout * inner, 0.0);
    parallel_for(outer * nout, resolve_threads(threads), [&](std::size_t row) {
        const std::size_t o = row % nout;
        const std::size_t b = row / nout;
        double* dst = &out[(b * nout + o) * inner];
        for (std::size_t j = 0; j < nin; ++j) {
            const double w = k.at(o, j);
            const double* src = &data[(b * nin + j) * inner];
            for (std::size_t t = 0; t < inner; ++t) dst[t] += w * src[t];
        }
    });
    shape[axis] = nout;
    return out;
}

}  // namespace detail

/// n-dimensional Hankel transform of a sampled field by tensor-product quadrature.
///
/// AxisByAxis performs n successive 1-D contractions; Direct sums the full
/// product kernel per output point. Both use the same rule on every axis.
inline GridFunction hankel_nd(const MuVector& mu, const ScalarFieldN& f, const GridSpec& grid,
                              const QuadratureRule& rule, TransformPath path = TransformPath::AxisByAxis,
                              unsigned threads = 0, std::size_t node_cap = kDefaultGridPointCap) {
    const std::size_t n = mu.size();
    if (grid.dim() != n) throw DimensionMismatch("hankel_nd: grid and mu dimensions differ");
    for (const auto& ax : grid.axes())
        for (double y : ax)
            if (!(y > 0.0)) throw DomainError("hankel_nd output points must be > 0");
    std::size_t nodes_total = 1;
    for (std::size_t i = 0; i < n; ++i) nodes_total *= rule.size();
    if (nodes_total > node_cap)
        throw LimitExceeded("hankel_nd needs " + std::to_string(nodes_total) + " samples, cap " +
                            std::to_string(node_cap));

    std::vector<AxisKernel> kernels;
    for (std::size_t i = 0; i < n; ++i)
        kernels.push_back(make_axis_kernel(mu.value(i), rule, grid.axis(i), AxisKernel::Kind::Full, 0, threads));

    const GridSpec nodes = GridSpec::uniform_axes(n, rule.nodes);
    std::vector<double> samples(nodes_total);
    {
        std::vector<double> p(n);
        for (std::size_t fl = 0; fl < nodes_total; ++fl) {
            nodes.point(fl, p);
            samples[fl] = f(p);
        }
    }

    if (path == TransformPath::AxisByAxis) {
        std::vector<std::size_t> shape(n, rule.size());
        for (std::size_t a = 0; a < n; ++a) samples = detail::contract_axis(samples, shape, a, kernels[a], threads);
        return GridFunction(grid, std::move(samples), mu);
    }

    std::vector<double> out(grid.total(), 0.0);
    parallel_for(grid.total(), resolve_threads(threads), [&](std::size_t fo) {
        const auto oi = grid.unflatten(fo);
        double s = 0.0;
        for (std::size_t fl = 0; fl < nodes_total; ++fl) {
            std::size_t rem = fl;
            double w = samples[fl];
            for (std::size_t a = n; a-- > 0;) {
                w *= kernels[a].at(oi[a], rem % rule.size());
                rem /= rule.size();
            }
            s += w;
        }
        out[fo] = s;
    });
    return GridFunction(grid, std::move(out), mu);
}

/// Integral over the orthant of Σ_terms q x^{μ+1/2+2k} e^{-c||x||²} against a
/// separable kernel, evaluated term by term as products of 1-D sums.
///
/// kernels[i] maps axis-i nodes to outputs; the node factor
/// x^{μ_i+1/2+2k_i} e^{-c x^2} is supplied here. Output is row-major over
/// the kernels' output axes.
inline std::vector<double> separable_apply(const SymbolicHFunction& phi, const std::vector<AxisKernel>& kernels,
                                           unsigned threads = 0) {
    const std::size_t n = phi.dim();
    if (kernels.size() != n) throw DimensionMismatch("separable_apply: kernel count mismatch");
    const double c = to_double(phi.decay);
    // Per-axis vectors for each exponent used.
    std::vector<std::map<std::uint32_t, std::vector<double>>> cache(n);
    for (const auto& [k, q] : phi.poly.terms()) {
        for (std::size_t i = 0; i < n; ++i) {
            auto& slot = cache[i][k[i]];
            if (!slot.empty()) continue;
            const auto& K = kernels[i];
            std::vector<double> g(K.nodes.size());
            const double p = phi.mu.value(i) + 0.5 + 2.0 * k[i];
            for (std::size_t j = 0; j < g.size(); ++j)
                g[j] = std::pow(K.nodes[j], p) * std::exp(-c * K.nodes[j] * K.nodes[j]);
            slot.assign(K.outputs.size(), 0.0);
            for (std::size_t o = 0; o < K.outputs.size(); ++o) {
                double s = 0.0;
                for (std::size_t j = 0; j < g.size(); ++j) s += K.at(o, j) * g[j];
                slot[o] = s;
            }
        }
    }
    std::vector<std::size_t> shape(n);
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= (shape[i] = kernels[i].outputs.size());
    std::vector<double> out(total, 0.0);
    std::vector<std::pair<double, const MultiIndex*>> terms;
    for (const auto& [k, q] : phi.poly.terms()) terms.emplace_back(to_double(q), &k);
    parallel_for(total, resolve_threads(threads), [&](std::size_t fl) {
        std::vector<std::size_t> idx(n);
        std::size_t rem = fl;
        for (std::size_t i = n; i-- > 0;) {
            idx[i] = rem % shape[i];
            rem /= shape[i];
        }
        double s = 0.0;
        for (const auto& [q, k] : terms) {
            double v = q;
            for (std::size_t i = 0; i < n; ++i) v *= cache[i].at((*k)[i])[idx[i]];
            s += v;
        }
        out[fl] = s;
    });
    return out;
}

/// h_μ φ on a grid for a decaying symbolic function.
inline GridFunction hankel_symbolic(const SymbolicHFunction& phi, const GridSpec& grid, const QuadratureRule& rule,
                                    unsigned threads = 0) {
    if (phi.decay == 0) throw DecayRequired("numeric transform needs decay > 0");
    if (grid.dim() != phi.dim()) throw DimensionMismatch("grid and function dimensions differ");
    std::vector<AxisKernel> ks;
    for (std::size_t i = 0; i < phi.dim(); ++i)
        ks.push_back(make_axis_kernel(phi.mu.value(i), rule, grid.axis(i), AxisKernel::Kind::Full, 0, threads));
    return GridFunction(grid, separable_apply(phi, ks, threads), phi.mu);
}

/// u-part y^{-μ-1/2} h_μ φ(y), well defined at y = 0.
inline GridFunction hankel_symbolic_upart(const SymbolicHFunction& phi, const GridSpec& grid,
                                          const QuadratureRule& rule, unsigned threads = 0) {
    if (phi.decay == 0) throw DecayRequired("numeric transform needs decay > 0");
    if (grid.dim() != phi.dim()) throw DimensionMismatch("grid and function dimensions differ");
    std::vector<AxisKernel> ks;
    for (std::size_t i = 0; i < phi.dim(); ++i)
        ks.push_back(make_axis_kernel(phi.mu.value(i), rule, grid.axis(i), AxisKernel::Kind::Reduced, 0, threads));
    return GridFunction(grid, separable_apply(phi, ks, threads), phi.mu);
}

/// Quadrature rule matched to a symbolic function's Gaussian rate.
inline QuadratureRule default_rule(const SymbolicHFunction& phi, const QuadratureConfig& cfg = {}) {
    if (phi.decay == 0) throw DecayRequired("quadrature truncation needs decay > 0");
    return cfg.rule_for_decay(to_double(phi.decay));
}

/// ∫_{(0,∞)^n} f by tensor quadrature (same rule on each axis).
inline double integrate_orthant(const ScalarFieldN& f, std::size_t n, const QuadratureRule& rule,
                                std::size_t node_cap = kDefaultGridPointCap) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= rule.size();
    if (total > node_cap) throw LimitExceeded("orthant quadrature exceeds node cap");
    const GridSpec nodes = GridSpec::uniform_axes(n, rule.nodes);
    std::vector<double> p(n);
    double s = 0.0;
    for (std::size_t fl = 0; fl < total; ++fl) {
        std::size_t rem = fl;
        double w = 1.0;
        for (std::size_t a = n; a-- > 0;) {
            const std::size_t j = rem % rule.size();
            p[a] = rule.nodes[j];
            w *= rule.weights[j];
            rem /= rule.size();
        }
        s += w * f(p);
    }
    return s;
}

}  // namespace hankelc

namespace hankelc {

/// Result of a double transform h_μ(h_μ φ) compared with φ on a box.
struct ReciprocityReport {
    double max_error = 0.0;       ///< sup |h_μ h_μ φ - φ| on the box
    double refinement_delta = 0.0;  ///< sup change when the interpolation step is halved
    double step = 0.0;
};

namespace detail {

// h_μ(h_μ φ) on `box`; the inner transform is sampled (u-part) on a uniform
// grid with the given step and interpolated.
inline GridFunction double_transform(const SymbolicHFunction& phi, const GridSpec& box, const QuadratureRule& rule,
                                     double step, unsigned threads) {
    const std::size_t n = phi.dim();
    const std::size_t count = static_cast<std::size_t>(std::ceil(rule.radius / step)) + 4;
    std::vector<double> axis(count);
    for (std::size_t i = 0; i < count; ++i) axis[i] = step * static_cast<double>(i);
    const GridFunction inner = hankel_symbolic_upart(phi, GridSpec::uniform_axes(n, axis), rule, threads);
    const EvenUniformInterpolator interp(std::vector<std::size_t>(n, count), step, inner.values);
    std::vector<double> power(n);
    for (std::size_t i = 0; i < n; ++i) power[i] = phi.mu.value(i) + 0.5;
    auto g = [&](std::span<const double> y) {
        double v = interp(y);
        for (std::size_t i = 0; i < n; ++i) v *= std::pow(y[i], power[i]);
        return v;
    };
    return hankel_nd(phi.mu, g, box, rule, TransformPath::AxisByAxis, threads);
}

}  // namespace detail

/// Checks h_μ = h_μ^{-1} on φ: second transform of the interpolated first one.
inline ReciprocityReport self_reciprocity(const SymbolicHFunction& phi, const GridSpec& box,
                                          const QuadratureRule& rule, double step = 0.01, unsigned threads = 0) {
    const GridFunction coarse = detail::double_transform(phi, box, rule, step, threads);
    const GridFunction fine = detail::double_transform(phi, box, rule, step / 2, threads);
    ReciprocityReport r;
    r.step = step / 2;
    std::vector<double> p(box.dim());
    for (std::size_t f = 0; f < box.total(); ++f) {
        box.point(f, p);
        r.max_error = std::max(r.max_error, std::abs(fine.values[f] - eval_symbolic(phi, p)));
        r.refinement_delta = std::max(r.refinement_delta, std::abs(fine.values[f] - coarse.values[f]));
    }
    return r;
}

}  // namespace hankelc

namespace hankelc {

/// ∫_{(0,∞)^n} f g dx for two symbolic functions of the same order, summed
/// term by term as products of one-dimensional moments.
inline double pair_orthant(const SymbolicHFunction& f, const SymbolicHFunction& g, const QuadratureRule& rule) {
    if (!(f.mu == g.mu)) throw DimensionMismatch("pair_orthant: orders differ");
    const std::size_t n = f.dim();
    const double c = to_double(f.decay + g.decay);
    std::vector<std::map<std::uint32_t, double>> moments(n);
    auto moment = [&](std::size_t i, std::uint32_t p) {
        auto [it, fresh] = moments[i].try_emplace(p, 0.0);
        if (fresh) {
            const double e = 2 * f.mu.value(i) + 1 + 2.0 * p;
            double s = 0.0;
            for (std::size_t j = 0; j < rule.size(); ++j) {
                const double x = rule.nodes[j];
                s += rule.weights[j] * std::pow(x, e) * std::exp(-c * x * x);
            }
            it->second = s;
        }
        return it->second;
    };
    double total = 0.0;
    for (const auto& [a, qa] : f.poly.terms())
        for (const auto& [b, qb] : g.poly.terms()) {
            double v = to_double(qa * qb);
            for (std::size_t i = 0; i < n; ++i) v *= moment(i, a[i] + b[i]);
            total += v;
        }
    return total;
}

}  // namespace hankelc
