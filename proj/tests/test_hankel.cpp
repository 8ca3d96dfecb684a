#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "hankelc/hankel.hpp"

using namespace hankelc;
using Catch::Approx;

namespace {

const Rational half = make_rational(1, 2);

SymbolicHFunction gaussian(const MuVector& mu, EvenPolynomial q) { return SymbolicHFunction(mu, std::move(q), half); }

double sup_diff(const GridFunction& a, const GridFunction& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

}  // namespace

TEST_CASE("build_quadrature examples") {
    const auto r = build_quadrature(1.0, 2, 1);
    REQUIRE(r.size() == 2);
    CHECK(r.nodes[0] == Approx((1 - 1 / std::sqrt(3.0)) / 2).epsilon(1e-15));
    CHECK(r.nodes[1] == Approx((1 + 1 / std::sqrt(3.0)) / 2).epsilon(1e-15));
    CHECK(r.weights[0] == Approx(0.5).epsilon(1e-15));
    CHECK(r.weights[1] == Approx(0.5).epsilon(1e-15));
    CHECK(r.weights[0] * r.nodes[0] * r.nodes[0] + r.weights[1] * r.nodes[1] * r.nodes[1] ==
          Approx(1.0 / 3).epsilon(1e-15));

    const auto g = build_quadrature(10.0, 16, 8);
    double s = 0.0, wsum = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
        s += g.weights[j] * std::exp(-g.nodes[j] * g.nodes[j] / 2);
        wsum += g.weights[j];
    }
    CHECK(std::abs(s - 1.25331413731550025120786354227) < 1e-12);
    CHECK(wsum == Approx(10.0).epsilon(1e-12));
    for (std::size_t j = 1; j < g.size(); ++j) CHECK(g.nodes[j] > g.nodes[j - 1]);
    CHECK(g.nodes.front() > 0.0);
    CHECK(g.nodes.back() < 10.0);

    CHECK_THROWS_AS(build_quadrature(1.0, 1024, 2048), LimitExceeded);
    CHECK_THROWS_AS(truncation_radius(0.0), DecayRequired);
}

TEST_CASE("hankel_1d examples") {
    const auto rule = build_quadrature(truncation_radius(0.5), 24, 16);
    const auto ys = linspace(0.1, 5.0, 50);
    const auto zero = hankel_1d(0.5, [](double) { return 0.0; }, ys, rule);
    CHECK(zero.max_abs() == 0.0);

    const auto sine = hankel_1d(0.5, [](double x) { return x * std::exp(-x * x / 2); }, ys, rule);
    for (std::size_t i = 0; i < ys.size(); ++i)
        CHECK(std::abs(sine.values[i] - ys[i] * std::exp(-ys[i] * ys[i] / 2)) < 1e-8);

    // e^{-x} sqrt(x) decays slowly: truncate at 40 and compare with 4x resolution.
    auto f = [](double x) { return std::exp(-x) * std::sqrt(x); };
    const auto base = hankel_1d(0.5, f, {1.0}, build_quadrature(40.0, 24, 64));
    const auto fine = hankel_1d(0.5, f, {1.0}, build_quadrature(40.0, 24, 256));
    CHECK(std::abs(base.values[0] - fine.values[0]) < 1e-8);
    CHECK(std::abs(base.values[0] - 0.388443493507509326836039738266) < 1e-8);

    CHECK_THROWS_AS(hankel_1d(0.5, f, {0.0, 1.0}, rule), DomainError);
}

TEST_CASE("hankel_nd examples") {
    const MuVector mu{half, half};
    const auto rule = build_quadrature(truncation_radius(0.5), 24, 16);
    const GridSpec grid = GridSpec::uniform_axes(2, linspace(0.1, 4.0, 12));

    const auto zero = hankel_nd(mu, [](std::span<const double>) { return 0.0; }, grid, rule);
    CHECK(zero.max_abs() == 0.0);

    auto f = [](std::span<const double> x) { return x[0] * x[1] * std::exp(-(x[0] * x[0] + x[1] * x[1]) / 2); };
    const auto h = hankel_nd(mu, f, grid, rule);
    std::vector<double> p(2);
    double err = 0.0;
    for (std::size_t i = 0; i < grid.total(); ++i) {
        grid.point(i, p);
        err = std::max(err, std::abs(h.values[i] - f(p)));
    }
    CHECK(err < 1e-7);

    const auto direct = hankel_nd(mu, f, grid, rule, TransformPath::Direct);
    CHECK(sup_diff(h, direct) < 1e-9);
}

TEST_CASE("hankel_nd factorises for separable input") {
    const MuVector mu{make_rational(0), make_rational(3, 2)};
    const auto rule = build_quadrature(12.0, 24, 16);
    auto g = [](double x) { return (1 + x * x) * std::exp(-x * x / 2); };
    auto k = [](double x) { return std::pow(x, 2.0) * std::exp(-0.7 * x * x); };
    const auto ya = linspace(0.2, 3.0, 7), yb = linspace(0.1, 4.0, 9);
    const auto hg = hankel_1d(0.0, g, ya, rule);
    const auto hk = hankel_1d(1.5, k, yb, rule);
    const auto h = hankel_nd(mu, [&](std::span<const double> x) { return g(x[0]) * k(x[1]); }, GridSpec({ya, yb}),
                             rule);
    for (std::size_t i = 0; i < ya.size(); ++i)
        for (std::size_t j = 0; j < yb.size(); ++j)
            CHECK(std::abs(h.values[i * yb.size() + j] - hg.values[i] * hk.values[j]) < 1e-10);
}

TEST_CASE("parallel schedule does not change results") {
    const MuVector mu{half, make_rational(0)};
    const auto rule = build_quadrature(11.0, 16, 8);
    const GridSpec grid = GridSpec::uniform_axes(2, linspace(0.1, 4.0, 15));
    auto f = [](std::span<const double> x) { return std::exp(-(x[0] * x[0] + 2 * x[1] * x[1]) / 2) * x[0]; };
    const auto a = hankel_nd(mu, f, grid, rule, TransformPath::AxisByAxis, 1);
    const auto b = hankel_nd(mu, f, grid, rule, TransformPath::AxisByAxis, 4);
    CHECK(a.values == b.values);
}

TEST_CASE("symbolic transform agrees with sampled transform") {
    const MuVector mu{make_rational(3, 2), make_rational(-1, 2)};
    const auto phi = gaussian(mu, EvenPolynomial::monomial({1, 0}, 2) + EvenPolynomial::constant(2, -1));
    const auto rule = default_rule(phi);
    const GridSpec grid = GridSpec::uniform_axes(2, linspace(0.1, 4.0, 9));
    const auto a = hankel_symbolic(phi, grid, rule);
    const auto b = hankel_nd(mu, [&](std::span<const double> x) { return eval_symbolic(phi, x); }, grid, rule);
    CHECK(sup_diff(a, b) < 1e-12);
    CHECK_THROWS_AS(hankel_symbolic(SymbolicHFunction(mu, EvenPolynomial::constant(2, 1)), grid, rule),
                    DecayRequired);
}

TEST_CASE("diagonalization h(S_i phi) = -y_i^2 h(phi)") {
    const MuVector mu{make_rational(0), half};
    const auto phi = gaussian(mu, EvenPolynomial::monomial({1, 1}) + EvenPolynomial::constant(2, 3));
    const auto rule = default_rule(phi);
    const GridSpec grid = GridSpec::uniform_axes(2, linspace(0.1, 4.0, 10));
    const auto h = hankel_symbolic(phi, grid, rule);
    for (std::size_t axis = 0; axis < 2; ++axis) {
        const auto hs = hankel_symbolic(apply_S(axis, phi), grid, rule);
        std::vector<double> p(2);
        double err = 0.0;
        for (std::size_t i = 0; i < grid.total(); ++i) {
            grid.point(i, p);
            err = std::max(err, std::abs(hs.values[i] + p[axis] * p[axis] * h.values[i]));
        }
        CHECK(err < 1e-6);
    }
}

TEST_CASE("self-adjointness of S_i under the orthant pairing") {
    const MuVector mu{half};
    const auto f = SymbolicHFunction(mu, EvenPolynomial::monomial({2}) + EvenPolynomial::constant(1, 1), half);
    const auto g = SymbolicHFunction(mu, EvenPolynomial::monomial({1}, -2), make_rational(3, 4));
    const auto rule = build_quadrature(10.0, 24, 16);
    auto pair = [&](const SymbolicHFunction& a, const SymbolicHFunction& b) {
        return integrate_orthant([&](std::span<const double> x) { return eval_symbolic(a, x) * eval_symbolic(b, x); },
                                 1, rule);
    };
    const double l = pair(apply_S(0, f), g), r = pair(f, apply_S(0, g));
    CHECK(l == Approx(r).epsilon(1e-8));
}

TEST_CASE("self-reciprocity on a small family", "[slow]") {
    for (const Rational& m : {make_rational(-1, 2), Rational(0), half, make_rational(3, 2)}) {
        const MuVector mu{m};
        const auto phi = gaussian(mu, EvenPolynomial::monomial({1}, -1) + EvenPolynomial::constant(1, 2));
        const auto rep = self_reciprocity(phi, GridSpec({linspace(0.1, 4.0, 40)}), default_rule(phi));
        CHECK(rep.max_error < 1e-6);
        CHECK(rep.refinement_delta < 1e-6);
    }
}

TEST_CASE("GridFunction serialisation") {
    const GridFunction g(GridSpec({{1.0, 2.0}, {0.5}}), {3.0, 4.0}, MuVector{half, Rational(0)});
    std::ostringstream os;
    g.write_csv(os);
    CHECK(os.str().rfind("x1,x2,value\n1,0.5,3\n", 0) == 0);
    const auto back = GridFunction::from_json(g.to_json());
    CHECK(back.values == g.values);
    CHECK(back.spec.axes() == g.spec.axes());
    CHECK(back.mu->str() == g.mu->str());
    CHECK_THROWS_AS(GridFunction(GridSpec({{1.0, 2.0}}), {1.0}), DimensionMismatch);
    CHECK_THROWS_AS(GridSpec({{1.0, 1.0}}), DomainError);
    CHECK_THROWS_AS(GridSpec({linspace(1, 2, 1000)}, 10), LimitExceeded);
}

TEST_CASE("even interpolator reproduces cubics") {
    std::vector<double> v;
    const double h = 0.1;
    for (int i = 0; i < 30; ++i) v.push_back(1 + 2 * (i * h) * (i * h));
    const EvenUniformInterpolator I({30}, h, v);
    for (double y : {0.0, 0.03, 0.55, 2.88}) CHECK(I(std::vector{y}) == Approx(1 + 2 * y * y).epsilon(1e-13));
    CHECK(I(std::vector{5.0}) == 0.0);
}
