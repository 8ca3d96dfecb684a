#pragma once

#include <cmath>
#include <map>
#include <vector>

#include "hankelc/hankel.hpp"
#include "hankelc/quadrature.hpp"
#include "hankelc/symbolic.hpp"

namespace hankelc {

/// The ten decaying functions x^{μ+1/2} Q(x^2) e^{-c||x||^2}, c in {1/2, 3/4, 1},
/// used to test P[y^2] h_μ f = 0 weakly.
inline std::vector<SymbolicHFunction> default_weak_family(const MuVector& mu) {
    const std::size_t n = mu.size();
    const MultiIndex zero(n), e1 = MultiIndex::unit(n, 0), en = MultiIndex::unit(n, n - 1);
    auto one = [&] { return EvenPolynomial::constant(n, 1); };
    auto sq_sum = [&] {
        EvenPolynomial q(n);
        for (std::size_t i = 0; i < n; ++i) q.add_term(MultiIndex::unit(n, i), 1);
        return q;
    };
    auto quart_sum = [&] {
        EvenPolynomial q(n);
        for (std::size_t i = 0; i < n; ++i) q.add_term(MultiIndex::unit(n, i) + MultiIndex::unit(n, i), 1);
        return q;
    };
    const Rational c1 = make_rational(1, 2), c2 = make_rational(3, 4), c3 = 1;
    std::vector<SymbolicHFunction> fam;
    fam.emplace_back(mu, one(), c1);
    fam.emplace_back(mu, one(), c2);
    fam.emplace_back(mu, one(), c3);
    fam.emplace_back(mu, one() + EvenPolynomial::monomial(e1), c1);
    fam.emplace_back(mu, EvenPolynomial::monomial(en), c2);
    fam.emplace_back(mu, one() * Rational(2) - sq_sum(), c3);
    fam.emplace_back(mu, quart_sum() + EvenPolynomial::constant(n, make_rational(1, 3)), c1);
    fam.emplace_back(mu, one() - EvenPolynomial::monomial(e1) + EvenPolynomial::monomial(e1 + e1, make_rational(1, 4)),
                     c2);
    fam.emplace_back(mu, EvenPolynomial::monomial(e1 + en) + EvenPolynomial::constant(n, make_rational(1, 2)), c3);
    fam.emplace_back(mu, one() * Rational(3) - EvenPolynomial::monomial(e1, 2), c1);
    return fam;
}

struct WeakPairing {
    double value = 0.0;
    double scale = 0.0;  ///< ∫ |f g|

    double residual() const { return scale == 0.0 ? std::abs(value) : std::abs(value) / scale; }
};

namespace detail {

// Per-axis w_j x_j^{μ_i+1/2} over the rule nodes.
inline std::vector<std::vector<double>> weighted_prefix(const MuVector& mu, const QuadratureRule& rule) {
    std::vector<std::vector<double>> out(mu.size(), std::vector<double>(rule.size()));
    for (std::size_t i = 0; i < mu.size(); ++i)
        for (std::size_t j = 0; j < rule.size(); ++j)
            out[i][j] = rule.weights[j] * std::pow(rule.nodes[j], mu.value(i) + 0.5);
    return out;
}

// Σ W f g and Σ W |f g| over tensor nodes; g given by its values there.
inline WeakPairing pair_on_nodes(const SymbolicHFunction& f, const std::vector<double>& g, const QuadratureRule& rule) {
    const std::size_t n = f.dim();
    const auto prefix = weighted_prefix(f.mu, rule);
    const NumericUForm fu(f.upart());
    std::vector<double> x(n);
    WeakPairing p;
    for (std::size_t fl = 0; fl < g.size(); ++fl) {
        std::size_t rem = fl;
        double w = 1.0;
        for (std::size_t a = n; a-- > 0;) {
            const std::size_t j = rem % rule.size();
            x[a] = rule.nodes[j];
            w *= prefix[a][j];
            rem /= rule.size();
        }
        const double v = w * fu(x) * g[fl];
        p.value += v;
        p.scale += std::abs(v);
    }
    return p;
}

}  // namespace detail

/// Per-axis transform kernels for one Gaussian rate: inner rule nodes to outer rule nodes.
struct WeakKernels {
    QuadratureRule outer;
    std::vector<AxisKernel> axes;
};

inline WeakKernels make_weak_kernels(const MuVector& mu, double decay, const QuadratureConfig& cfg, unsigned threads) {
    const QuadratureRule inner = cfg.rule_for_decay(decay);
    // h_μ of a Gaussian of rate c decays at rate 1/(4c).
    WeakKernels k{cfg.rule_for_decay(1.0 / (4 * decay)), {}};
    for (std::size_t i = 0; i < mu.size(); ++i)
        k.axes.push_back(make_axis_kernel(mu.value(i), inner, k.outer.nodes, AxisKernel::Kind::Full, 0, threads));
    return k;
}

/// (f, h_μ(P[y^2] φ)) with the transform computed numerically on the
/// quadrature nodes of the outer pairing.
inline WeakPairing weak_pairing(const SymbolicHFunction& f, const OperatorPoly& P, const SymbolicHFunction& phi,
                                const WeakKernels& kernels, unsigned threads = 0) {
    if (phi.decay == 0) throw DecayRequired("weak check needs decaying test functions");
    SymbolicHFunction pphi = phi;
    pphi.poly = P.in_squares() * phi.poly;
    return detail::pair_on_nodes(f, separable_apply(pphi, kernels.axes, threads), kernels.outer);
}

inline WeakPairing weak_pairing(const SymbolicHFunction& f, const OperatorPoly& P, const SymbolicHFunction& phi,
                                const QuadratureConfig& cfg = {}, unsigned threads = 0) {
    if (phi.decay == 0) throw DecayRequired("weak check needs decaying test functions");
    return weak_pairing(f, P, phi, make_weak_kernels(f.mu, to_double(phi.decay), cfg, threads), threads);
}

/// Independent route: (f, L φ) with L φ exact.
inline WeakPairing operator_pairing(const SymbolicHFunction& f, const OperatorPoly& P, const SymbolicHFunction& phi,
                                    const QuadratureConfig& cfg = {}) {
    const SymbolicHFunction lphi = apply_L(P, f.mu, phi);
    const QuadratureRule rule = cfg.rule_for_decay(to_double(phi.decay));
    const GridSpec nodes = GridSpec::uniform_axes(f.dim(), rule.nodes);
    const NumericUForm lu(lphi.upart());
    std::vector<std::vector<double>> power(f.dim(), std::vector<double>(rule.size()));
    for (std::size_t i = 0; i < f.dim(); ++i)
        for (std::size_t j = 0; j < rule.size(); ++j) power[i][j] = std::pow(rule.nodes[j], f.mu.value(i) + 0.5);
    std::vector<double> g(nodes.total());
    std::vector<double> x(f.dim());
    for (std::size_t fl = 0; fl < g.size(); ++fl) {
        nodes.point(fl, x);
        g[fl] = lu(x);
        std::size_t rem = fl;
        for (std::size_t a = f.dim(); a-- > 0;) {
            g[fl] *= power[a][rem % rule.size()];
            rem /= rule.size();
        }
    }
    return detail::pair_on_nodes(f, g, rule);
}

struct WeakCheck {
    double max_residual = 0.0;
    double max_oracle_residual = 0.0;
    std::vector<double> residuals;
    std::vector<double> oracle_residuals;
};

/// max over the family of |(f, h_μ(P[y^2] φ))| / ∫|f h_μ(P[y^2] φ)|.
inline WeakCheck weak_spectral_check(const SymbolicHFunction& f, const OperatorPoly& P,
                                     const std::vector<SymbolicHFunction>& family, const QuadratureConfig& cfg = {},
                                     unsigned threads = 0) {
    if (P.dim() != f.dim()) throw DimensionMismatch("weak check: dimension mismatch");
    WeakCheck w;
    std::map<Rational, WeakKernels> cache;
    for (const auto& phi : family) {
        if (phi.decay == 0) throw DecayRequired("weak check needs decaying test functions");
        auto it = cache.find(phi.decay);
        if (it == cache.end())
            it = cache.emplace(phi.decay, make_weak_kernels(f.mu, to_double(phi.decay), cfg, threads)).first;
        const double r = weak_pairing(f, P, phi, it->second, threads).residual();
        const double o = operator_pairing(f, P, phi, cfg).residual();
        w.residuals.push_back(r);
        w.oracle_residuals.push_back(o);
        w.max_residual = std::max(w.max_residual, r);
        w.max_oracle_residual = std::max(w.max_oracle_residual, o);
    }
    return w;
}

struct KernelElement {
    SymbolicHFunction f;
    bool exact_zero = false;  ///< L f == 0 in exact arithmetic
    WeakCheck weak;
};

struct LiouvilleResult {
    HypothesisReport hypothesis;
    std::vector<KernelElement> basis;
};

/// Polynomial solutions x^{μ+1/2} Q(x^2), deg Q <= D, of L f = 0 with certificates.
inline LiouvilleResult liouville_solve(const OperatorPoly& P, const MuVector& mu, std::uint32_t D,
                                       bool weak = true, const QuadratureConfig& cfg = {}, unsigned threads = 0) {
    if (P.dim() != mu.size()) throw DimensionMismatch("liouville_solve: dimension mismatch");
    LiouvilleResult out;
    out.hypothesis = check_hypothesis(P);
    if (!out.hypothesis.pass) throw HypothesisFailed(out.hypothesis.reason, out.hypothesis.failing_axis);
    const auto family = weak ? default_weak_family(mu) : std::vector<SymbolicHFunction>{};
    for (auto& f : kernel_basis(P, mu, D)) {
        KernelElement e{f, apply_L(P, mu, f).poly.is_zero(), {}};
        if (weak) e.weak = weak_spectral_check(f, P, family, cfg, threads);
        out.basis.push_back(std::move(e));
    }
    return out;
}

}  // namespace hankelc
