#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "hankelc/bessel.hpp"
#include "hankelc/cutoff.hpp"
#include "hankelc/hankel.hpp"
#include "hankelc/symbolic.hpp"

namespace hankelc {

/// Test function x^{μ+1/2} u(x) χ(x), where χ is 1, the cutoff ψ, or 1 - ψ.
struct TestFunction {
    enum class Cut { None, Inner, Complement };

    MuVector mu;
    UForm u;
    Cut cut = Cut::None;
    CutoffSpec cutoff{};

    TestFunction(MuVector m, UForm v, Cut c = Cut::None, CutoffSpec spec = CutoffSpec())
        : mu(std::move(m)), u(std::move(v)), cut(c), cutoff(spec) {
        if (mu.size() != u.dim()) throw DimensionMismatch("test function: mu and u dimensions differ");
    }
    TestFunction(const SymbolicHFunction& f) : TestFunction(f.mu, f.upart()) {}  // NOLINT

    std::size_t dim() const noexcept { return mu.size(); }

    double chi(std::span<const double> x) const {
        if (cut == Cut::None) return 1.0;
        const double p = cutoff(x);
        return cut == Cut::Inner ? p : 1.0 - p;
    }

    double eval(std::span<const double> x) const {
        double prefix = 1.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!(x[i] > 0.0)) throw DomainError("test functions are evaluated on the open orthant");
            prefix *= std::pow(x[i], mu.value(i) + 0.5);
        }
        return prefix * u.eval(x) * chi(x);
    }
};

/// Evaluates T^k{u χ} at points (including x = 0) through the Leibniz rule.
class TkEvaluator {
public:
    TkEvaluator(const MultiIndex& k, const TestFunction& f) : f_(f) {
        if (k.size() != f.dim()) throw DimensionMismatch("T^k dimension mismatch");
        if (f.cut == TestFunction::Cut::None) {
            parts_.push_back({1.0, MultiIndex(k.size()), apply_Tk(k, f.u)});
            return;
        }
        for (const auto& j : mi_below(k))
            parts_.push_back({to_double(Rational(mi_binomial(k, j))), j, apply_Tk(k - j, f.u)});
    }

    double operator()(std::span<const double> x) const {
        double s = 0.0;
        for (const auto& p : parts_) {
            double c = p.weight * p.image.eval(x);
            if (f_.cut != TestFunction::Cut::None) {
                double t = f_.cutoff.Tk(p.j, x);
                if (f_.cut == TestFunction::Cut::Complement) t = (p.j.is_zero() ? 1.0 : 0.0) - t;
                c *= t;
            }
            s += c;
        }
        return s;
    }

private:
    struct Part {
        double weight;
        MultiIndex j;
        UForm image;
    };
    const TestFunction& f_;
    std::vector<Part> parts_;
};

/// Richardson limit h -> 0 of a function even in h along h = 2^{-j}.
struct LimitEstimate {
    double value = 0.0;
    double last_change = 0.0;
    std::vector<double> samples;
};

inline constexpr int kLadderFirst = 4;
inline constexpr int kLadderLast = 12;

inline LimitEstimate richardson_limit(const std::function<double(double)>& f, int first = kLadderFirst,
                                      int last = kLadderLast) {
    if (last - first < 4) throw DomainError("extrapolation ladder needs at least five rungs");
    LimitEstimate est;
    double scale = 0.0;
    for (int j = first; j <= last; ++j) {
        est.samples.push_back(f(std::ldexp(1.0, -j)));
        scale = std::max(scale, std::abs(est.samples.back()));
    }
    // Eliminate the h^2 and h^4 error terms.
    std::vector<double> r1, r2;
    for (std::size_t i = 0; i + 1 < est.samples.size(); ++i)
        r1.push_back((4 * est.samples[i + 1] - est.samples[i]) / 3);
    for (std::size_t i = 0; i + 1 < r1.size(); ++i) r2.push_back((16 * r1[i + 1] - r1[i]) / 15);
    std::vector<double> d;
    for (std::size_t i = 0; i + 1 < r2.size(); ++i) d.push_back(std::abs(r2[i + 1] - r2[i]));
    const double floor = 1e-11 * std::max(1.0, scale);
    for (std::size_t i = d.size() - 3; i + 1 < d.size(); ++i)
        if (d[i + 1] > floor && d[i + 1] > 0.5 * d[i])
            throw ExtrapolationDiverged("limit estimates do not contract (change " + std::to_string(d[i + 1]) +
                                        " after " + std::to_string(d[i]) + ")");
    est.value = r2.back();
    est.last_change = d.back();
    return est;
}

enum class LimitMode { Auto, Exact, Extrapolate };

/// lim_{x->0+} T^k{u χ}(x).
inline double delta_limit(const MultiIndex& k, const TestFunction& f, LimitMode mode = LimitMode::Auto) {
    if (mode == LimitMode::Exact || (mode == LimitMode::Auto && f.u.decay == 0)) {
        // χ is identically 1 (or 0) on the ball ||x|| < a/2.
        if (f.cut == TestFunction::Cut::Complement) return 0.0;
        return to_double(apply_Tk(k, f.u).poly.coeff(MultiIndex(k.size())));
    }
    const TkEvaluator tk(k, f);
    std::vector<double> x(f.dim());
    return richardson_limit([&](double h) {
               std::fill(x.begin(), x.end(), h);
               return tk(x);
           }).value;
}

/// (T^k δ_μ, φ) = C_μ lim_{x->0+} T^k{x^{-μ-1/2} φ(x)}.
inline double pair_delta(const MultiIndex& k, const MuVector& mu, const TestFunction& phi,
                         LimitMode mode = LimitMode::Auto) {
    if (!(phi.mu == mu)) throw DimensionMismatch("pair_delta: order mismatch");
    return c_mu(mu) * delta_limit(k, phi, mode);
}

/// Exact C_μ^{-1} (T^k δ_μ, φ) for symbolic φ: the constant term of T^k u.
inline Rational delta_limit_exact(const MultiIndex& k, const SymbolicHFunction& phi) {
    return apply_Tk(k, phi.upart()).poly.coeff(MultiIndex(k.size()));
}

/// Σ c_k T^k δ_μ.
struct DeltaCombination {
    MuVector mu;
    std::map<MultiIndex, double> coeffs;

    double pair(const TestFunction& phi, LimitMode mode = LimitMode::Auto) const {
        double s = 0.0;
        for (const auto& [k, c] : coeffs) s += c * pair_delta(k, mu, phi, mode);
        return s;
    }

    nlohmann::json to_json() const {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& [k, c] : coeffs)
            terms.push_back({{"k", std::vector<std::uint32_t>(k.begin(), k.end())}, {"c", c}});
        nlohmann::json m = nlohmann::json::array();
        for (const auto& q : mu.orders()) m.push_back(format_rational(q));
        return {{"mu", m}, {"terms", terms}};
    }

    static DeltaCombination from_json(const nlohmann::json& j) {
        std::vector<Rational> orders;
        for (const auto& e : j.at("mu")) orders.push_back(parse_rational(e.get<std::string>()));
        DeltaCombination d{MuVector(std::move(orders)), {}};
        for (const auto& t : j.at("terms")) {
            MultiIndex k(t.at("k").get<std::vector<std::uint32_t>>());
            if (k.size() != d.mu.size()) throw DimensionMismatch("delta term dimension mismatch");
            d.coeffs[k] += t.at("c").get<double>();
        }
        return d;
    }
};

/// Rewrites Σ c_k S^k δ_μ as Σ c_k b_{0,k} T^k δ_μ.
inline std::map<MultiIndex, Rational> s_delta_to_t(const MuVector& mu, const std::map<MultiIndex, Rational>& s) {
    std::map<MultiIndex, Rational> out;
    for (const auto& [k, c] : s) {
        const auto b = koh_zemanian_coeffs(k, mu);
        const auto it = b.find(MultiIndex(k.size()));
        if (it != b.end() && c != 0) out[k] += c * it->second;
    }
    return out;
}

/// Exact C_μ^{-1} (S^k δ_μ, φ) = constant term of x^{-μ-1/2} S^k φ.
inline Rational s_delta_limit_exact(const MultiIndex& k, const SymbolicHFunction& phi) {
    return apply_Sk_upart(k, phi.mu, phi.upart()).poly.coeff(MultiIndex(k.size()));
}

struct TaylorReport {
    std::uint32_t order = 0;
    std::map<MultiIndex, Rational> exact;          // a_{2k}
    std::map<MultiIndex, double> extrapolated;     // a_{2k} via the limit ladder (decay > 0 only)
    std::vector<double> ladder;                    // x = 2^{-j} (1,...,1)
    std::vector<double> remainder;                 // |R_{2r}(x)|
    std::map<MultiIndex, std::vector<double>> remainder_Tk;  // |T^k R_{2r}(x)|, |k| = r
};

/// Taylor coefficients a_{2k} = (T^k δ_μ, φ) / (C_μ 2^{|k|} k!) and remainder samples.
inline TaylorReport taylor_coeffs(const MuVector& mu, const SymbolicHFunction& phi, std::uint32_t r) {
    if (!(phi.mu == mu)) throw DimensionMismatch("taylor_coeffs: order mismatch");
    const std::size_t n = mu.size();
    TaylorReport rep;
    rep.order = r;
    EvenPolynomial taylor(n);
    for (const auto& k : mi_graded_enumerate(n, r)) {
        const Rational norm = Rational(BigInt(1) << k.length()) * Rational(mi_factorial(k));
        const Rational a = delta_limit_exact(k, phi) / norm;
        if (a != 0) rep.exact[k] = a;
        taylor.add_term(k, a);
        if (phi.decay != 0)
            rep.extrapolated[k] = delta_limit(k, phi, LimitMode::Extrapolate) / to_double(norm);
    }
    const UForm u = phi.upart();
    const UForm tu{taylor, 0};
    std::vector<double> x(n);
    std::vector<std::pair<MultiIndex, std::pair<UForm, UForm>>> images;
    for (const auto& k : mi_of_length(n, r)) images.push_back({k, {apply_Tk(k, u), apply_Tk(k, tu)}});
    for (int j = kLadderFirst; j <= kLadderLast; ++j) {
        const double h = std::ldexp(1.0, -j);
        std::fill(x.begin(), x.end(), h);
        rep.ladder.push_back(h);
        rep.remainder.push_back(std::abs(u.eval(x) - tu.eval(x)));
        for (const auto& [k, im] : images)
            rep.remainder_Tk[k].push_back(std::abs(im.first.eval(x) - im.second.eval(x)));
    }
    return rep;
}

/// h_μ T^k δ_μ = C_k^μ t^{μ+1/2} t^{2k}.
inline SymbolicHFunction hankel_delta(const MultiIndex& k, const MuVector& mu) {
    if (k.size() != mu.size()) throw DimensionMismatch("hankel_delta: dimension mismatch");
    return SymbolicHFunction(mu, EvenPolynomial::monomial(k, c_k_mu_exact(mu, k)));
}

struct TransformPairing {
    double lhs = 0.0;    // (T^k δ_μ, h_μ φ) from the numeric transform near 0
    double rhs = 0.0;    // (h_μ T^k δ_μ, φ) by quadrature
    double scale = 0.0;  // ∫ |h_μ T^k δ_μ| |φ|
};

/// Both sides of (T^k δ_μ, h_μ φ) = (h_μ T^k δ_μ, φ).
inline TransformPairing pair_delta_transform(const MultiIndex& k, const MuVector& mu, const SymbolicHFunction& phi,
                                             const QuadratureRule& rule, unsigned threads = 0) {
    if (!(phi.mu == mu) || k.size() != mu.size()) throw DimensionMismatch("pair_delta_transform: dimension mismatch");
    if (phi.decay == 0) throw DecayRequired("pair_delta_transform needs a decaying test function");
    const std::size_t n = mu.size();
    std::vector<double> hs;
    for (int j = kLadderFirst; j <= kLadderLast; ++j) hs.push_back(std::ldexp(1.0, -j));
    // T^{k_i} of the reduced kernel is (-1)^{k_i} times the kernel shifted by k_i.
    std::vector<AxisKernel> ks;
    for (std::size_t i = 0; i < n; ++i)
        ks.push_back(make_axis_kernel(mu.value(i), rule, hs, AxisKernel::Kind::Reduced, k[i], threads));
    const std::vector<double> grid = separable_apply(phi, ks, threads);
    const double sign = k.length() % 2 == 0 ? 1.0 : -1.0;
    std::size_t stride = 0;
    for (std::size_t i = 0, s = 1; i < n; ++i, s *= hs.size()) stride += s;
    const LimitEstimate lim = richardson_limit([&](double h) {
        const auto rung = static_cast<std::size_t>(std::lround(-std::log2(h))) - kLadderFirst;
        return sign * grid[stride * rung];
    });

    TransformPairing out;
    out.lhs = c_mu(mu) * lim.value;
    const SymbolicHFunction hd = hankel_delta(k, mu);
    out.rhs = pair_orthant(hd, phi, rule);
    SymbolicHFunction abs_phi = phi;
    abs_phi.poly = EvenPolynomial(n);
    for (const auto& [m, q] : phi.poly.terms()) abs_phi.poly.add_term(m, abs(q));
    SymbolicHFunction abs_hd = hd;
    abs_hd.poly = EvenPolynomial::monomial(k, abs(c_k_mu_exact(mu, k)));
    out.scale = pair_orthant(abs_hd, abs_phi, rule);
    return out;
}

/// Pairing functional on test functions.
using PairingOracle = std::function<double(const TestFunction&)>;

/// Recovers c_k of F = Σ_{|k|<=N} c_k T^k δ_μ from F(x^{μ+1/2} x^{2k} ψ).
///
/// F must vanish on functions supported in ||x|| >= a; this is checked on
/// five random functions carrying the complementary cutoff 1 - ψ.
inline DeltaCombination reconstruct_point_supported(const PairingOracle& F, const MuVector& mu, std::uint32_t N,
                                                    const CutoffSpec& cut, double support_tol = 1e-8,
                                                    std::uint64_t seed = 20240517) {
    const std::size_t n = mu.size();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-8, 8);
    for (int t = 0; t < 5; ++t) {
        EvenPolynomial q(n);
        for (const auto& k : mi_graded_enumerate(n, 2)) q.add_term(k, make_rational(num(rng), 4));
        q.add_term(MultiIndex(n), 1);
        const TestFunction g(mu, UForm{q, make_rational(1, 2)}, TestFunction::Cut::Complement, cut);
        const double v = F(g);
        if (!(std::abs(v) <= support_tol))
            throw SupportViolation("functional does not vanish outside the ball of radius " +
                                   std::to_string(cut.outer()) + " (value " + std::to_string(v) + ")");
    }
    DeltaCombination d{mu, {}};
    const double cm = c_mu(mu);
    for (const auto& k : mi_graded_enumerate(n, N)) {
        const TestFunction probe(mu, UForm{EvenPolynomial::monomial(k), 0}, TestFunction::Cut::Inner, cut);
        const double norm = cm * std::ldexp(mi_factorial(k).convert_to<double>(), static_cast<int>(k.length()));
        const double c = F(probe) / norm;
        if (c != 0.0) d.coeffs[k] = c;
    }
    return d;
}

}  // namespace hankelc
