#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "hankelc/multiplier.hpp"

using namespace hankelc;
using Catch::Approx;

namespace {

EvenPolynomial one_plus_norm(std::size_t n) {
    EvenPolynomial d = EvenPolynomial::constant(n, 1);
    for (std::size_t i = 0; i < n; ++i) d.add_term(MultiIndex::unit(n, i), 1);
    return d;
}

}  // namespace

TEST_CASE("exact T-calculus of rational functions") {
    const RationalFunction r(EvenPolynomial::constant(1, 1), one_plus_norm(1));
    // T (1+x^2)^{-1} = -2 (1+x^2)^{-2}
    const auto t = r.T(0);
    for (double x : {0.0, 0.4, 2.0}) CHECK(t.eval(std::vector{x}) == Approx(-2 / std::pow(1 + x * x, 2)));
    const auto t2 = r.Tk({2});
    for (double x : {0.3, 1.1}) CHECK(t2.eval(std::vector{x}) == Approx(8 / std::pow(1 + x * x, 3)));
}

TEST_CASE("multiplier_check examples") {
    const MultiplierFunction inv{RationalFunction(EvenPolynomial::constant(2, 1), one_plus_norm(2))};
    const auto a = multiplier_check(inv, 1);
    for (const auto& [k, e] : a.entries) {
        CHECK(e.n_k == 0);
        CHECK(e.bounded);
    }
    CHECK(a.entries.at({0, 0}).C <= 1.0);
    CHECK(a.entries.at({0, 0}).n_max == 1);

    const MultiplierFunction quartic{RationalFunction(EvenPolynomial::monomial({2}))};
    const auto b = multiplier_check(quartic, 0);
    CHECK(b.entries.at({0}).n_k == -2);
    CHECK(b.entries.at({0}).C <= 1.0);

    const CutoffSpec cut(1.0);
    const MultiplierFunction psi{RationalFunction(EvenPolynomial::constant(2, 1)), MultiplierFunction::Cut::Inner, cut};
    const auto c = multiplier_check(psi, 1);
    CHECK(c.entries.at({0, 0}).n_k == 0);
    CHECK(c.entries.at({0, 0}).C == Approx(1.0));
    // max |T_1 ψ| = 2 max |ψ̃'| over the bridge annulus.
    double peak = 0.0;
    for (double s = 0.25; s <= 1.0; s += 1e-5) peak = std::max(peak, std::abs(cut.profile(s, 1).derivative(1)));
    CHECK(c.entries.at({1, 0}).C == Approx(2 * peak).epsilon(0.05));
    CHECK(c.entries.at({1, 0}).n_k == 0);
}

TEST_CASE("multiplier bound is stable under grid doubling") {
    const MultiplierFunction f{RationalFunction(EvenPolynomial::monomial({1, 0}) + EvenPolynomial::constant(2, 2),
                                                one_plus_norm(2) + EvenPolynomial::monomial({1, 1}))};
    const CutoffSpec cut(1.5);
    const MultiplierFunction g{f.rational, MultiplierFunction::Cut::Complement, cut};
    for (const auto* m : {&f, &g}) {
        const auto coarse = multiplier_check(*m, 2, default_multiplier_grid(*m, 100));
        const auto fine = multiplier_check(*m, 2, default_multiplier_grid(*m, 200));
        for (const auto& [k, e] : coarse.entries) {
            CHECK(e.n_k == fine.entries.at(k).n_k);
            CHECK(std::abs(fine.entries.at(k).C - e.C) <= 0.05 * fine.entries.at(k).C);
        }
    }
}

TEST_CASE("multiplier denominators must satisfy the hypothesis") {
    CHECK_THROWS_AS(RationalFunction(EvenPolynomial::constant(1, 1), EvenPolynomial::monomial({1})), HypothesisFailed);
    CHECK_THROWS_AS(RationalFunction(EvenPolynomial::constant(1, 1),
                                     EvenPolynomial::constant(1, 1) - EvenPolynomial::monomial({1})),
                    HypothesisFailed);
}
