#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hankelc/distributions.hpp"
#include "hankelc/hankel.hpp"
#include "hankelc/liouville.hpp"
#include "hankelc/multiplier.hpp"
#include "hankelc/seminorm.hpp"
#include "hankelc/symbolic.hpp"

namespace hankelc {

struct CheckResult {
    std::string name;
    bool passed = false;
    double residual = 0.0;
    double tolerance = 0.0;
    bool expected_fail = false;  ///< negative control: should not pass
    std::string note;

    /// Passing checks and failing negative controls are both the intended outcome.
    bool ok() const { return passed != expected_fail; }

    nlohmann::json to_json() const {
        return {{"name", name}, {"passed", passed}, {"residual", residual}, {"tolerance", tolerance},
                {"expected_fail", expected_fail}, {"ok", ok()}, {"note", note}};
    }
};

struct VerifyOptions {
    unsigned threads = 0;
    bool negative_controls = false;
    std::uint64_t seed = 20240517;
};

namespace verify_detail {

inline const std::vector<Rational>& mu_sweep() {
    static const std::vector<Rational> v{make_rational(-1, 2), Rational(0), make_rational(1, 2), make_rational(3, 2)};
    return v;
}

inline MultiIndex random_index(std::mt19937_64& rng, std::size_t n, unsigned max_len) {
    MultiIndex k(n);
    unsigned budget = static_cast<unsigned>(rng() % (max_len + 1));
    while (budget > 0) {
        ++k[rng() % n];
        --budget;
    }
    return k;
}

inline EvenPolynomial random_poly(std::mt19937_64& rng, std::size_t n, unsigned degree, int terms) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 6);
    EvenPolynomial p(n);
    for (int t = 0; t < terms; ++t) p.add_term(random_index(rng, n, degree), make_rational(num(rng), den(rng)));
    return p;
}

inline UForm random_uform(std::mt19937_64& rng, std::size_t n, unsigned degree) {
    static const std::vector<Rational> rates{0, make_rational(1, 2), make_rational(3, 4), 1};
    return UForm{random_poly(rng, n, degree, 1 + static_cast<int>(rng() % 4)), rates[rng() % rates.size()]};
}

inline std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

// Gaussian-symbolic family x^{μ+1/2} Q(x^2) e^{-||x||^2/2}, deg Q <= 2.
inline std::vector<EvenPolynomial> reciprocity_family(std::size_t n) {
    const MultiIndex e1 = MultiIndex::unit(n, 0), en = MultiIndex::unit(n, n - 1);
    EvenPolynomial a = EvenPolynomial::constant(n, 1);
    EvenPolynomial b = EvenPolynomial::constant(n, 2) - EvenPolynomial::monomial(e1);
    b.add_term(e1 + en, make_rational(1, 3));
    EvenPolynomial c = EvenPolynomial::monomial(en, make_rational(-1, 2));
    c.add_term(e1 + e1, make_rational(1, 5));
    return {a, b, c};
}

inline std::vector<MuVector> order_sweep(std::size_t n) {
    std::vector<MuVector> out;
    for (const auto& m : mu_sweep()) out.push_back(MuVector::uniform(n, m));
    if (n == 2) out.push_back(MuVector{make_rational(-1, 2), make_rational(3, 2)});
    return out;
}

}  // namespace verify_detail

/// Leibniz, Koh-Zemanian, T-commutativity and the monomial displays, exactly.
inline CheckResult check_exact_identities(const VerifyOptions& opt = {}) {
    using namespace verify_detail;
    std::mt19937_64 rng(opt.seed);
    std::size_t failures = 0, checks = 0;
    for (int c = 0; c < 100; ++c) {
        const std::size_t n = 1 + c % 3;
        const UForm u = random_uform(rng, n, 6);
        const UForm theta = random_uform(rng, n, 6);
        const MultiIndex k = random_index(rng, n, 4);
        std::vector<Rational> orders;
        for (std::size_t i = 0; i < n; ++i) orders.push_back(make_rational(static_cast<long long>(rng() % 9) - 1, 2));
        const MuVector mu(orders);
        auto expect = [&](bool v) {
            ++checks;
            if (!v) ++failures;
        };
        expect(leibniz_Tk(k, theta, u) == apply_Tk(k, theta * u));
        expect(koh_zemanian_apply(k, mu, u) == apply_Sk_upart(k, mu, u));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) expect(apply_T(i, apply_T(j, u)) == apply_T(j, apply_T(i, u)));
        // T^m x^{2k} with |m| = |k|: 2^{|k|} k! when m = k, else 0.
        const MultiIndex m = random_index(rng, n, 4);
        for (const auto& kk : mi_of_length(n, static_cast<std::uint32_t>(m.length()))) {
            const UForm r = apply_Tk(m, UForm{EvenPolynomial::monomial(kk), 0});
            if (m == kk)
                expect(r.poly == EvenPolynomial::constant(n, Rational(BigInt(1) << m.length()) * Rational(mi_factorial(m))));
            else
                expect(r.poly.is_zero());
        }
        // T_i^r x_i^{2p} = 2^r p!/(p-r)! x_i^{2(p-r)}.
        const std::uint32_t p = 1 + static_cast<std::uint32_t>(rng() % 6), r = static_cast<std::uint32_t>(rng() % (p + 1));
        const std::size_t axis = rng() % n;
        MultiIndex kr(n), kp(n);
        kr[axis] = r;
        kp[axis] = p;
        const Rational coef = Rational(BigInt(1) << r) * Rational(factorial(p)) / Rational(factorial(p - r));
        expect(apply_Tk(kr, UForm{EvenPolynomial::monomial(kp), 0}).poly == EvenPolynomial::monomial(kp - kr, coef));
    }
    CheckResult res{"exact operator identities", failures == 0, static_cast<double>(failures), 0.0, false,
                    std::to_string(checks) + " exact comparisons over 100 random cases"};
    return res;
}

/// h_μ h_μ φ = φ on [0.1, 4]^n.
inline CheckResult check_self_reciprocity(const VerifyOptions& opt = {}) {
    using namespace verify_detail;
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0, worst_delta = 0.0;
    int cases = 0;
    for (std::size_t n : {1u, 2u}) {
        const GridSpec box = GridSpec::uniform_axes(n, linspace(0.1, 4.0, n == 1 ? 40 : 20));
        for (const auto& mu : order_sweep(n))
            for (const auto& q : reciprocity_family(n)) {
                const SymbolicHFunction phi(mu, q, make_rational(1, 2));
                const auto r = self_reciprocity(phi, box, default_rule(phi), 0.02, opt.threads);
                worst = std::max(worst, r.max_error);
                worst_delta = std::max(worst_delta, r.refinement_delta);
                ++cases;
            }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = worst <= 1e-6 && worst_delta <= 1e-6 && secs <= 60.0;
    return {"transform self-reciprocity", pass, worst, 1e-6, false,
            std::to_string(cases) + " functions, refinement change " + fmt(worst_delta) + ", " + fmt(secs) + " s"};
}

/// h_μ(S_{μ_i} φ) = -y_i^2 h_μ φ.
inline CheckResult check_diagonalization(const VerifyOptions& opt = {}) {
    using namespace verify_detail;
    double worst = 0.0;
    int cases = 0;
    for (std::size_t n : {1u, 2u}) {
        const GridSpec box = GridSpec::uniform_axes(n, linspace(0.1, 4.0, n == 1 ? 60 : 25));
        for (const auto& mu : order_sweep(n))
            for (const auto& q : reciprocity_family(n)) {
                const SymbolicHFunction phi(mu, q, make_rational(1, 2));
                const QuadratureRule rule = default_rule(phi);
                const GridFunction h = hankel_symbolic(phi, box, rule, opt.threads);
                for (std::size_t axis = 0; axis < n; ++axis) {
                    const GridFunction hs = hankel_symbolic(apply_S(axis, phi), box, rule, opt.threads);
                    std::vector<double> y(n);
                    for (std::size_t f = 0; f < box.total(); ++f) {
                        box.point(f, y);
                        worst = std::max(worst, std::abs(hs.values[f] + y[axis] * y[axis] * h.values[f]));
                    }
                    ++cases;
                }
            }
    }
    return {"diagonalization of S_mu", worst <= 1e-6, worst, 1e-6, false, std::to_string(cases) + " (function, axis) pairs"};
}

/// (T^k δ_μ, h_μ φ) = (h_μ T^k δ_μ, φ) and the closed value -sqrt(π/2).
inline CheckResult check_delta_consistency(const VerifyOptions& opt = {}) {
    using namespace verify_detail;
    double worst = 0.0;
    int cases = 0;
    for (std::size_t n : {1u, 2u})
        for (const auto& mu : order_sweep(n))
            for (const auto& q : reciprocity_family(n)) {
                const SymbolicHFunction phi(mu, q, make_rational(3, 4));
                const QuadratureRule rule = default_rule(phi);
                for (const auto& k : mi_graded_enumerate(n, 2)) {
                    const auto p = pair_delta_transform(k, mu, phi, rule, opt.threads);
                    worst = std::max(worst, std::abs(p.lhs - p.rhs) / std::max(std::abs(p.rhs), p.scale));
                    ++cases;
                }
            }
    const MuVector mu{make_rational(1, 2)};
    const SymbolicHFunction phi(mu, EvenPolynomial::constant(1, 1), make_rational(1, 2));
    const auto p = pair_delta_transform({1}, mu, phi, default_rule(phi), opt.threads);
    const double closed = -std::sqrt(std::numbers::pi / 2);
    const double closed_err = std::max(std::abs(p.lhs - closed), std::abs(p.rhs - closed)) / std::max(1.0, p.scale);
    const bool pass = worst <= 1e-5 && closed_err <= 1e-6;
    return {"delta/transform consistency", pass, worst, 1e-5, false,
            std::to_string(cases) + " pairings; closed case error " + fmt(closed_err) + " (tol 1e-6)"};
}

/// Coefficient recovery for 50 random point-supported combinations.
inline CheckResult check_structure_roundtrip(const VerifyOptions& opt = {}) {
    using namespace verify_detail;
    std::mt19937_64 rng(opt.seed + 5);
    std::uniform_real_distribution<double> coef(-5.0, 5.0);
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 1 + t % 2;
        const MuVector mu = MuVector::uniform(n, mu_sweep()[rng() % 4]);
        DeltaCombination d{mu, {}};
        for (const auto& k : mi_graded_enumerate(n, 2))
            if (rng() % 3) d.coeffs[k] = coef(rng);
        const CutoffSpec cut(0.5 + 0.5 * static_cast<double>(rng() % 4));
        const auto back = reconstruct_point_supported([&](const TestFunction& f) { return d.pair(f); }, mu, 2, cut);
        for (const auto& k : mi_graded_enumerate(n, 2)) {
            const double want = d.coeffs.count(k) ? d.coeffs.at(k) : 0.0;
            const double got = back.coeffs.count(k) ? back.coeffs.at(k) : 0.0;
            worst = std::max(worst, std::abs(want - got));
        }
    }
    return {"delta combination round trip", worst <= 1e-8, worst, 1e-8, false, "50 random combinations, |k| <= 2"};
}

/// Taylor coefficients (exact and extrapolated) and remainder decay.
inline CheckResult check_taylor(const VerifyOptions& = {}) {
    using namespace verify_detail;
    std::size_t exact_fail = 0;
    double extrap_err = 0.0, tail = 0.0;
    bool monotone = true;
    for (std::size_t n : {1u, 2u})
        for (const auto& mu : order_sweep(n))
            for (const auto& q : reciprocity_family(n))
                for (const Rational& c : {make_rational(1, 2), Rational(1)}) {
                    const SymbolicHFunction phi(mu, q, c);
                    const auto rep = taylor_coeffs(mu, phi, 2);
                    // Series oracle: Q(x^2) times Π_i Σ_j (-c x_i^2)^j / j!.
                    for (const auto& k : mi_graded_enumerate(n, 2)) {
                        Rational want = 0;
                        for (const auto& [a, qa] : q.terms()) {
                            if (!a.dominated_by(k)) continue;
                            const MultiIndex rest = k - a;
                            Rational e = qa;
                            for (std::size_t i = 0; i < n; ++i) {
                                Rational pw = 1;
                                for (std::uint32_t s = 0; s < rest[i]; ++s) pw *= -c;
                                e *= pw / Rational(factorial(rest[i]));
                            }
                            want += e;
                        }
                        const Rational got = rep.exact.count(k) ? rep.exact.at(k) : Rational(0);
                        if (got != want) ++exact_fail;
                        extrap_err = std::max(extrap_err, std::abs(rep.extrapolated.at(k) - to_double(want)));
                    }
                    // Remainder decay is asserted on the e^{-||x||^2/2} family.
                    if (c != make_rational(1, 2)) continue;
                    for (std::uint32_t r = 0; r <= 2; ++r) {
                        const auto rr = r == 2 ? rep : taylor_coeffs(mu, phi, r);
                        for (const auto& [k, s] : rr.remainder_Tk) {
                            // Ladder starts at j = 4; monotone from j = 6.
                            for (std::size_t i = 3; i < s.size(); ++i)
                                if (!(s[i] < s[i - 1])) monotone = false;
                            tail = std::max(tail, s.back());
                        }
                    }
                }
    const bool pass = exact_fail == 0 && extrap_err <= 1e-8 && monotone && tail < 1e-6;
    return {"Taylor machinery", pass, extrap_err, 1e-8, false,
            "exact mismatches " + std::to_string(exact_fail) + ", remainder monotone " + (monotone ? "yes" : "no") +
                ", max |T^k R| at j=12 " + fmt(tail)};
}

/// λ_{m,k} <= Σ_l |b_{l,k}| γ_{m+|l|,k+l} on 20 random functions.
inline CheckResult check_seminorm_inequality(const VerifyOptions& opt = {}) {
    using namespace verify_detail;
    std::mt19937_64 rng(opt.seed + 7);
    std::size_t violations = 0, comparisons = 0;
    double worst_ratio = 0.0, min_rev = INFINITY, max_rev = 0.0;
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 1 + t % 2;
        const MuVector mu = MuVector::uniform(n, mu_sweep()[rng() % 4]);
        EvenPolynomial q = random_poly(rng, n, 2, 3);
        q.add_term(MultiIndex(n), 1);
        const SymbolicHFunction f(mu, q, make_rational(1 + static_cast<long long>(rng() % 3), 2));
        const GridSpec grid = default_sup_grid(f, n == 1 ? 200 : 80);
        for (std::uint32_t m = 0; m <= 2; ++m)
            for (const auto& k : mi_graded_enumerate(n, 2)) {
                const auto c = compare_seminorms(m, k, mu, f, grid, opt.threads);
                ++comparisons;
                if (!c.holds) ++violations;
                if (c.bound > 0) worst_ratio = std::max(worst_ratio, c.lambda / c.bound);
                if (c.lambda > 0) {
                    min_rev = std::min(min_rev, c.gamma / c.lambda);
                    max_rev = std::max(max_rev, c.gamma / c.lambda);
                }
            }
    }
    return {"seminorm inequality", violations == 0, worst_ratio, 1.0, false,
            std::to_string(comparisons) + " comparisons; observed gamma/lambda in [" + fmt(min_rev) + ", " +
                fmt(max_rev) + "]"};
}

/// Polynomial kernels of L(P) with exact residuals and the weak spectral check.
inline std::vector<CheckResult> check_liouville(const VerifyOptions& opt = {}) {
    using namespace verify_detail;
    std::size_t elements = 0, inexact = 0;
    double worst = 0.0, worst_oracle = 0.0;
    for (std::size_t n : {1u, 2u}) {
        OperatorPoly sum = OperatorPoly::sum_of_axes(n);
        OperatorPoly shifted = sum;
        shifted.add(MultiIndex(n), 1);
        OperatorPoly squares(n);
        for (std::size_t i = 0; i < n; ++i) squares.add(MultiIndex::unit(n, i) + MultiIndex::unit(n, i), 1);
        for (const auto& P : {OperatorPoly::constant(n, 1), sum, shifted, squares})
            for (const auto& m : mu_sweep()) {
                const auto r = liouville_solve(P, MuVector::uniform(n, m), n == 1 ? 4 : 2, true, {}, opt.threads);
                for (const auto& e : r.basis) {
                    ++elements;
                    if (!e.exact_zero) ++inexact;
                    worst = std::max(worst, e.weak.max_residual);
                    worst_oracle = std::max(worst_oracle, e.weak.max_oracle_residual);
                }
            }
    }
    const MuVector mu{make_rational(1, 2)};
    const SymbolicHFunction control(mu, EvenPolynomial::monomial({1}));
    const auto neg = weak_spectral_check(control, OperatorPoly::sum_of_axes(1), default_weak_family(mu), {}, opt.threads);
    std::vector<CheckResult> out;
    out.push_back({"Liouville end-to-end", inexact == 0 && worst <= 1e-6 && neg.max_residual >= 0.1, worst, 1e-6, false,
                   std::to_string(elements) + " kernel elements, exact residual failures " + std::to_string(inexact) +
                       ", oracle residual " + fmt(worst_oracle) + ", negative control " + fmt(neg.max_residual) +
                       " (needs >= 0.1)"});
    if (opt.negative_controls)
        out.push_back({"negative control x^(mu+1/2) x^2, P = sum x_i", neg.max_residual <= 1e-6, neg.max_residual, 1e-6,
                       true, "must fail the weak check"});
    return out;
}

/// Half-order closed forms, the derivative identity and the Γ recurrence.
inline CheckResult check_bessel_layer(const VerifyOptions& = {}) {
    double closed = 0.0, deriv = 0.0, gam = 0.0;
    for (double z = 0.01; z <= 50.0; z += 0.0731) {
        const double s = std::sin(z), c = std::cos(z), a = std::sqrt(2 / (std::numbers::pi * z));
        closed = std::max(closed, std::abs(bessel_j(0.5, z) - a * s));
        closed = std::max(closed, std::abs(bessel_j(-0.5, z) - a * c));
        closed = std::max(closed, std::abs(bessel_j(1.5, z) - a * (s / z - c)));
        closed = std::max(closed, std::abs(bessel_j(2.5, z) - a * ((3 / (z * z) - 1) * s - 3 * c / z)));
    }
    // d/dz [z^{-ν} J_ν(z)] = -z^{-ν} J_{ν+1}(z).
    const double h = 1e-5;
    for (double nu : {-0.5, 0.0, 0.5, 1.0, 2.5, 7.0})
        for (double z = 0.5; z <= 30.0; z += 0.37) {
            auto g = [&](double t) { return std::pow(t, -nu) * bessel_j(nu, t); };
            const double fd = (g(z + h) - g(z - h)) / (2 * h);
            deriv = std::max(deriv, std::abs(fd + std::pow(z, -nu) * bessel_j(nu + 1, z)));
        }
    for (double x = 0.05; x <= 49.0; x += 0.173)
        gam = std::max(gam, std::abs(gamma_fn(x + 1) - x * gamma_fn(x)) / gamma_fn(x + 1));
    const bool pass = closed <= 1e-10 && deriv <= 1e-6 && gam <= 1e-12;
    return {"Bessel layer", pass, closed, 1e-10, false,
            "derivative identity " + verify_detail::fmt(deriv) + " (tol 1e-6), gamma recurrence " +
                verify_detail::fmt(gam) + " (tol 1e-12)"};
}

/// n_k and C from multiplier_check are stable when the test grid is doubled.
inline CheckResult check_multipliers(const VerifyOptions& opt = {}) {
    std::vector<MultiplierFunction> cases;
    for (std::size_t n : {1u, 2u}) {
        EvenPolynomial d = EvenPolynomial::constant(n, 1);
        for (std::size_t i = 0; i < n; ++i) d.add_term(MultiIndex::unit(n, i), 1);
        cases.push_back({RationalFunction(EvenPolynomial::constant(n, 1), d)});
        cases.push_back({RationalFunction(EvenPolynomial::monomial(MultiIndex::unit(n, 0) + MultiIndex::unit(n, 0)))});
        cases.push_back({RationalFunction(EvenPolynomial::constant(n, 1)), MultiplierFunction::Cut::Inner, CutoffSpec(1.0)});
        EvenPolynomial num = EvenPolynomial::constant(n, 2);
        num.add_term(MultiIndex::unit(n, n - 1), -1);
        cases.push_back({RationalFunction(num, d), MultiplierFunction::Cut::Complement, CutoffSpec(1.5)});
    }
    double worst = 0.0;
    bool exponents_stable = true;
    for (const auto& f : cases) {
        const std::size_t pts = f.dim() == 1 ? 400 : 100;
        const auto coarse = multiplier_check(f, 2, default_multiplier_grid(f, pts), opt.threads);
        const auto fine = multiplier_check(f, 2, default_multiplier_grid(f, 2 * pts), opt.threads);
        for (const auto& [k, e] : fine.entries) {
            const auto& c = coarse.entries.at(k);
            if (c.n_k != e.n_k) exponents_stable = false;
            if (e.C > 0) worst = std::max(worst, std::abs(e.C - c.C) / e.C);
        }
    }
    return {"multiplier bounds under grid doubling", worst <= 0.05 && exponents_stable, worst, 0.05, false,
            std::to_string(cases.size()) + " multipliers, |k| <= 2, n_k stable " + (exponents_stable ? "yes" : "no")};
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"identities", "roundtrip", "taylor", "seminorms", "liouville"};
    return names;
}

/// Runs one named suite; throws SpecError for an unknown name.
inline std::vector<CheckResult> run_suite(const std::string& name, const VerifyOptions& opt = {}) {
    if (name == "identities") return {check_exact_identities(opt), check_bessel_layer(opt)};
    if (name == "roundtrip")
        return {check_self_reciprocity(opt), check_diagonalization(opt), check_delta_consistency(opt),
                check_structure_roundtrip(opt)};
    if (name == "taylor") return {check_taylor(opt)};
    if (name == "seminorms") return {check_seminorm_inequality(opt), check_multipliers(opt)};
    if (name == "liouville") return check_liouville(opt);
    throw SpecError("unknown suite '" + name + "'");
}

/// The ten acceptance criteria in order.
inline std::vector<std::function<CheckResult(const VerifyOptions&)>> acceptance_criteria() {
    return {check_exact_identities,   check_self_reciprocity, check_diagonalization,
            check_delta_consistency,  check_structure_roundtrip, check_taylor,
            check_seminorm_inequality,
            [](const VerifyOptions& o) { return check_liouville(o).front(); },
            check_bessel_layer,       check_multipliers};
}

}  // namespace hankelc
