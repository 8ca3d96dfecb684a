#include <catch2/catch_amalgamated.hpp>

#include "hankelc/liouville.hpp"

using namespace hankelc;

namespace {

const Rational half = make_rational(1, 2);

}  // namespace

TEST_CASE("liouville_solve examples") {
    const auto r1 = liouville_solve(OperatorPoly::sum_of_axes(1), MuVector{half}, 3);
    REQUIRE(r1.basis.size() == 1);
    CHECK(r1.basis[0].f.poly == EvenPolynomial::constant(1, 1));
    CHECK(r1.basis[0].exact_zero);
    CHECK(r1.basis[0].weak.max_residual <= 1e-6);
    CHECK(r1.basis[0].weak.max_oracle_residual <= 1e-6);

    CHECK(liouville_solve(OperatorPoly::constant(1, 1), MuVector{half}, 3).basis.empty());

    const auto r2 = liouville_solve(OperatorPoly::sum_of_axes(2), MuVector{half, half}, 1);
    CHECK(r2.basis.size() == 2);
    for (const auto& e : r2.basis) {
        CHECK(e.exact_zero);
        CHECK(e.weak.max_residual <= 1e-6);
    }

    try {
        liouville_solve(OperatorPoly(2, {{{1, 1}, 1}}), MuVector{half, half}, 2);
        FAIL("expected HypothesisFailed");
    } catch (const HypothesisFailed& e) {
        CHECK(e.axis() == 0);
    }
}

TEST_CASE("weak check negative control") {
    const MuVector mu{half};
    const SymbolicHFunction f(mu, EvenPolynomial::monomial({1}));
    const auto w = weak_spectral_check(f, OperatorPoly::sum_of_axes(1), default_weak_family(mu));
    CHECK(w.max_residual >= 0.1);
    CHECK(w.max_oracle_residual >= 0.1);
}

TEST_CASE("weak check on the constant kernel element across orders") {
    for (const Rational& m : {make_rational(-1, 2), Rational(0), make_rational(3, 2)})
        for (std::size_t n : {1u, 2u}) {
            const MuVector mu = MuVector::uniform(n, m);
            const SymbolicHFunction f(mu, EvenPolynomial::constant(n, 1));
            const auto w = weak_spectral_check(f, OperatorPoly::sum_of_axes(n), default_weak_family(mu));
            CHECK(w.max_residual <= 1e-6);
            CHECK(w.max_oracle_residual <= 1e-6);
        }
}
