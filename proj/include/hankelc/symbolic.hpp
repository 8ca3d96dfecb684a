#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hankelc/bessel.hpp"
#include "hankelc/error.hpp"
#include "hankelc/linalg.hpp"
#include "hankelc/multiindex.hpp"
#include "hankelc/polynomial.hpp"

namespace hankelc {

/// x^{μ+1/2} Q(x_1^2, ..., x_n^2) exp(-c ||x||^2).
///
/// decay == 0 is the polynomial solution form; decay > 0 is a genuine
/// rapidly decreasing test function.
struct SymbolicHFunction {
    MuVector mu;
    EvenPolynomial poly;
    Rational decay = 0;

    SymbolicHFunction(MuVector m, EvenPolynomial q, Rational c = 0)
        : mu(std::move(m)), poly(std::move(q)), decay(std::move(c)) {
        if (mu.size() != poly.dim()) throw DimensionMismatch("mu and polynomial dimensions differ");
        if (decay < 0) throw DomainError("decay rate must be >= 0");
    }

    static SymbolicHFunction from_upart(const MuVector& mu, const UForm& u) {
        return SymbolicHFunction(mu, u.poly, u.decay);
    }

    std::size_t dim() const noexcept { return mu.size(); }
    UForm upart() const { return UForm{poly, decay}; }

    bool operator==(const SymbolicHFunction& o) const {
        return mu == o.mu && upart() == o.upart();
    }
};

/// x^{μ+1/2} Q(x^2) e^{-c||x||^2} at a point of the open orthant.
inline double eval_symbolic(const SymbolicHFunction& f, std::span<const double> x) {
    if (x.size() != f.dim()) throw DimensionMismatch("evaluation point dimension mismatch");
    double prefix = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0)) throw DomainError("eval_symbolic requires x_i > 0");
        prefix *= std::pow(x[i], f.mu.value(i) + 0.5);
    }
    return prefix * f.upart().eval(x);
}

/// P[x] = Σ a_α x^α and the associated L = Σ (-1)^{|α|} a_α S^α.
class OperatorPoly {
public:
    using Terms = std::map<MultiIndex, Rational>;

    explicit OperatorPoly(std::size_t n) : n_(n) {
        if (n == 0) throw DimensionMismatch("operator dimension must be >= 1");
    }
    OperatorPoly(std::size_t n, std::initializer_list<std::pair<MultiIndex, Rational>> terms)
        : OperatorPoly(n) {
        for (const auto& [a, c] : terms) add(a, c);
    }

    /// P = Σ_i x_i  (L = -S_μ).
    static OperatorPoly sum_of_axes(std::size_t n) {
        OperatorPoly p(n);
        for (std::size_t i = 0; i < n; ++i) p.add(MultiIndex::unit(n, i), 1);
        return p;
    }
    static OperatorPoly constant(std::size_t n, const Rational& c) {
        OperatorPoly p(n);
        p.add(MultiIndex(n), c);
        return p;
    }

    void add(const MultiIndex& alpha, const Rational& a) {
        if (alpha.size() != n_) throw DimensionMismatch("operator term dimension mismatch");
        if (a == 0) return;
        auto [it, inserted] = terms_.try_emplace(alpha, a);
        if (!inserted) {
            it->second += a;
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::size_t dim() const noexcept { return n_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::uint64_t degree() const {
        std::uint64_t d = 0;
        for (const auto& [a, c] : terms_) d = std::max(d, a.length());
        return d;
    }

    /// P at a real point (not squared).
    double eval(std::span<const double> x) const {
        double s = 0.0;
        for (const auto& [a, c] : terms_) {
            double m = to_double(c);
            for (std::size_t i = 0; i < n_; ++i) m *= std::pow(x[i], static_cast<double>(a[i]));
            s += m;
        }
        return s;
    }

    /// P[x_1^2, ..., x_n^2] as an even polynomial.
    EvenPolynomial in_squares() const {
        EvenPolynomial p(n_);
        for (const auto& [a, c] : terms_) p.add_term(a, c);
        return p;
    }

private:
    std::size_t n_;
    Terms terms_;
};

/// u-part of S_{μ_i} φ: x_i^2 T_i^2 u + 2(μ_i + 1) T_i u.
inline UForm apply_S_upart(std::size_t axis, const Rational& mu_i, const UForm& u) {
    const UForm t1 = apply_T(axis, u);
    const UForm t2 = apply_T(axis, t1);
    EvenPolynomial out = t2.poly.shifted(MultiIndex::unit(u.dim(), axis));
    out += t1.poly * (2 * (mu_i + 1));
    return UForm{std::move(out), u.decay};
}

/// S_{μ_i} f = d²f/dx_i² - (4μ_i² - 1)/(4x_i²) f, exact within the family.
inline SymbolicHFunction apply_S(std::size_t axis, const SymbolicHFunction& f) {
    if (axis >= f.dim()) throw DimensionMismatch("axis out of range");
    return SymbolicHFunction::from_upart(f.mu, apply_S_upart(axis, f.mu[axis], f.upart()));
}

inline UForm apply_Sk_upart(const MultiIndex& k, const MuVector& mu, UForm u) {
    if (k.size() != mu.size() || u.dim() != mu.size())
        throw DimensionMismatch("S^k dimension mismatch");
    for (std::size_t i = 0; i < k.size(); ++i)
        for (std::uint32_t r = 0; r < k[i]; ++r) u = apply_S_upart(i, mu[i], u);
    return u;
}

inline SymbolicHFunction apply_Sk(const MultiIndex& k, const SymbolicHFunction& f) {
    return SymbolicHFunction::from_upart(f.mu, apply_Sk_upart(k, f.mu, f.upart()));
}

/// L f = Σ (-1)^{|α|} a_α S^α f.
inline SymbolicHFunction apply_L(const OperatorPoly& L, const MuVector& mu,
                                 const SymbolicHFunction& f) {
    if (L.dim() != mu.size() || f.dim() != mu.size())
        throw DimensionMismatch("apply_L: operator, mu and function dimensions must agree");
    if (!(f.mu == mu)) throw DimensionMismatch("apply_L: function carries a different mu");
    const UForm u = f.upart();
    UForm acc{EvenPolynomial(mu.size()), u.decay};
    for (const auto& [alpha, a] : L.terms()) {
        const UForm s = apply_Sk_upart(alpha, mu, u);
        acc.poly += s.poly * (alpha.length() % 2 == 0 ? a : Rational(-a));
    }
    return SymbolicHFunction::from_upart(mu, acc);
}

/// Right-hand side of T^k{θφ} = Σ_{j<=k} C(k,j) T^{k-j}θ T^j φ.
inline UForm leibniz_Tk(const MultiIndex& k, const UForm& theta, const UForm& phi) {
    if (theta.dim() != k.size() || phi.dim() != k.size())
        throw DimensionMismatch("leibniz_Tk dimension mismatch");
    UForm acc{EvenPolynomial(k.size()), theta.decay + phi.decay};
    for (const auto& j : mi_below(k)) {
        const UForm prod = apply_Tk(k - j, theta) * apply_Tk(j, phi);
        acc.poly += prod.poly * Rational(mi_binomial(k, j));
    }
    return acc;
}

/// Coefficients b_{l,k} with x^{-μ-1/2} S_μ^k φ = Σ_l b_{l,k} x^{2l} T^{k+l} u (one axis).
///
/// Normal-orders (x²T² + 2(μ+1)T)^k using T x^{2l} = x^{2l} T + 2l x^{2(l-1)}.
inline std::vector<Rational> koh_zemanian_coeffs(std::uint32_t k, const Rational& mu_i) {
    // word[(l, m)] = coefficient of x^{2l} T^m; m - l == power so far.
    using Word = std::map<std::pair<std::uint32_t, std::uint32_t>, Rational>;
    auto left_T = [](const Word& w) {
        Word out;
        for (const auto& [lm, c] : w) {
            const auto [l, m] = lm;
            out[{l, m + 1}] += c;
            if (l > 0) out[{l - 1, m}] += c * (2 * l);
        }
        return out;
    };
    const Rational beta = 2 * (mu_i + 1);
    Word cur;
    cur[{0, 0}] = 1;
    for (std::uint32_t step = 0; step < k; ++step) {
        const Word t1 = left_T(cur);
        const Word t2 = left_T(t1);
        Word next;
        for (const auto& [lm, c] : t2) next[{lm.first + 1, lm.second}] += c;
        for (const auto& [lm, c] : t1) next[lm] += c * beta;
        cur = std::move(next);
    }
    std::vector<Rational> b(k + 1, Rational(0));
    for (const auto& [lm, c] : cur) {
        if (c == 0) continue;
        if (lm.second != k + lm.first) throw Error("koh_zemanian_coeffs: non-normal term");
        b[lm.first] = c;
    }
    return b;
}

/// Multi-dimensional b_{l,k} = Π_i b_{l_i,k_i}(μ_i), keyed by l <= k.
inline std::map<MultiIndex, Rational> koh_zemanian_coeffs(const MultiIndex& k, const MuVector& mu) {
    if (k.size() != mu.size()) throw DimensionMismatch("k and mu dimensions differ");
    std::vector<std::vector<Rational>> per_axis;
    for (std::size_t i = 0; i < k.size(); ++i) per_axis.push_back(koh_zemanian_coeffs(k[i], mu[i]));
    std::map<MultiIndex, Rational> out;
    for (const auto& l : mi_below(k)) {
        Rational c = 1;
        for (std::size_t i = 0; i < k.size(); ++i) c *= per_axis[i][l[i]];
        if (c != 0) out.emplace(l, c);
    }
    return out;
}

/// Σ_l b_{l,k} x^{2l} T^{k+l} u (the right-hand side of the expansion).
inline UForm koh_zemanian_apply(const MultiIndex& k, const MuVector& mu, const UForm& u) {
    UForm acc{EvenPolynomial(u.dim()), u.decay};
    for (const auto& [l, b] : koh_zemanian_coeffs(k, mu))
        acc.poly += apply_Tk(k + l, u).poly.shifted(l) * b;
    return acc;
}

/// Exact basis of { x^{μ+1/2} Q(x^2) : deg Q <= D, L f = 0 } in reduced echelon form.
inline std::vector<SymbolicHFunction> kernel_basis(const OperatorPoly& L, const MuVector& mu,
                                                   std::uint32_t max_degree) {
    if (L.dim() != mu.size()) throw DimensionMismatch("kernel_basis: dimension mismatch");
    const std::size_t n = mu.size();
    const auto cols = mi_graded_enumerate(n, max_degree);
    std::map<MultiIndex, std::size_t> row_of;
    std::vector<EvenPolynomial> images;
    images.reserve(cols.size());
    for (const auto& k : cols) {
        SymbolicHFunction mono(mu, EvenPolynomial::monomial(k));
        images.push_back(apply_L(L, mu, mono).poly);
        for (const auto& [m, q] : images.back().terms()) row_of.try_emplace(m, 0);
    }
    std::size_t r = 0;
    for (auto& [m, idx] : row_of) idx = r++;
    RationalMatrix mat(row_of.size(), std::vector<Rational>(cols.size(), Rational(0)));
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (const auto& [m, q] : images[c].terms()) mat[row_of.at(m)][c] = q;
    const RationalMatrix null = nullspace(std::move(mat), cols.size());
    std::vector<SymbolicHFunction> basis;
    for (const auto& v : null) {
        EvenPolynomial q(n);
        for (std::size_t c = 0; c < cols.size(); ++c) q.add_term(cols[c], v[c]);
        basis.emplace_back(mu, std::move(q));
    }
    return basis;
}

/// Outcome of the same-sign / nonvanishing test on the symbol P.
struct HypothesisReport {
    bool pass = false;
    bool same_sign = false;
    bool orthant_nonvanishing = false;  ///< exact criterion on [0,∞)^n \ {0}
    bool grid_confirms = false;         ///< simplex grid agrees with the exact criterion
    double grid_min_abs = 0.0;          ///< min |P| on the unit simplex grid
    bool full_space_nonvanishing = false;  ///< sampled on the cube surface of R^n \ {0}
    int failing_axis = -1;
    std::string reason;
};

namespace detail {

inline void simplex_points(std::size_t n, std::uint32_t denom, std::vector<std::vector<double>>& out) {
    for (const auto& k : mi_of_length(n, denom)) {
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(k[i]) / denom;
        out.push_back(std::move(x));
    }
}

}  // namespace detail

/// Same-sign coefficients and nonvanishing on the closed orthant minus the origin.
///
/// Exact criterion: a_0 != 0, or each axis carries a nonzero pure power.
/// A lattice on the unit simplex with about `grid_points` points double-checks it.
inline HypothesisReport check_hypothesis(const OperatorPoly& P, std::size_t grid_points = 10000) {
    HypothesisReport rep;
    const std::size_t n = P.dim();
    if (P.is_zero()) {
        rep.reason = "P is identically zero";
        return rep;
    }
    int sign = 0;
    rep.same_sign = true;
    for (const auto& [a, c] : P.terms()) {
        const int s = c > 0 ? 1 : -1;
        if (sign == 0) sign = s;
        if (s != sign) rep.same_sign = false;
    }
    const bool has_constant = P.terms().count(MultiIndex(n)) > 0;
    rep.orthant_nonvanishing = true;
    if (!has_constant) {
        for (std::size_t i = 0; i < n; ++i) {
            bool pure = false;
            for (const auto& [a, c] : P.terms()) {
                bool only_i = a[i] > 0;
                for (std::size_t j = 0; j < n && only_i; ++j)
                    if (j != i && a[j] != 0) only_i = false;
                if (only_i) pure = true;
            }
            if (!pure) {
                rep.orthant_nonvanishing = false;
                rep.failing_axis = static_cast<int>(i);
                break;
            }
        }
    }

    std::uint32_t denom = 1;
    while (denom < 2000 && binomial(n - 1 + denom + 1, n - 1).convert_to<double>() <=
                               static_cast<double>(grid_points))
        ++denom;
    std::vector<std::vector<double>> pts;
    detail::simplex_points(n, denom, pts);
    double min_abs = INFINITY;
    for (const auto& x : pts) min_abs = std::min(min_abs, std::abs(P.eval(x)));
    rep.grid_min_abs = min_abs;
    // Same-sign coefficients make the minimum on the simplex either 0 or
    // bounded away from it, so an exact zero test is the right comparison.
    const bool grid_nonzero = min_abs > 0.0;
    rep.grid_confirms = grid_nonzero == rep.orthant_nonvanishing || !rep.same_sign;

    // Cube surface ||x||_inf = 1 with all sign patterns.
    rep.full_space_nonvanishing = true;
    const std::uint32_t m = std::max<std::uint32_t>(2, n == 1 ? 2 : (n == 2 ? 200 : 20));
    std::vector<double> x(n);
    std::function<void(std::size_t)> walk = [&](std::size_t axis) {
        if (!rep.full_space_nonvanishing) return;
        if (axis == n) {
            double inf = 0.0;
            for (double v : x) inf = std::max(inf, std::abs(v));
            if (inf == 1.0 && P.eval(x) == 0.0) rep.full_space_nonvanishing = false;
            return;
        }
        for (std::uint32_t s = 0; s <= 2 * m; ++s) {
            x[axis] = -1.0 + static_cast<double>(s) / m;
            walk(axis + 1);
        }
    };
    walk(0);

    rep.pass = rep.same_sign && rep.orthant_nonvanishing;
    if (!rep.same_sign)
        rep.reason = "coefficients of P do not share one sign";
    else if (!rep.orthant_nonvanishing)
        rep.reason = "P vanishes on the positive orthant: no constant term and axis " +
                     std::to_string(rep.failing_axis + 1) + " has no pure power";
    return rep;
}

}  // namespace hankelc
