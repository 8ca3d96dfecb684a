#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "hankelc/seminorm.hpp"

using namespace hankelc;
using Catch::Approx;

namespace {

const Rational half = make_rational(1, 2);

SymbolicHFunction gaussian(const MuVector& mu) { return SymbolicHFunction(mu, EvenPolynomial::constant(mu.size(), 1), half); }

}  // namespace

TEST_CASE("seminorm_gamma examples") {
    const MuVector mu{half};
    const auto phi = gaussian(mu);
    const auto grid = default_sup_grid(phi);
    CHECK(seminorm_gamma(0, {0}, mu, phi, grid) == Approx(1.0).epsilon(1e-14));
    // Maximum of (1+x^2) e^{-x^2/2} at x = 1; the grid reaches it to second order.
    CHECK(seminorm_gamma(1, {0}, mu, phi, grid) == Approx(1.21306131942526684720759906998).epsilon(1e-4));
    CHECK(seminorm_gamma(0, {1}, mu, phi, grid) == Approx(1.0).epsilon(1e-14));
    const GridSpec fine({{0.0, 0.5, 1.0, 1.5}});
    CHECK(seminorm_gamma(1, {0}, mu, phi, fine) == Approx(1.21306131942526684720759906998).epsilon(1e-14));
    CHECK_THROWS_AS(seminorm_gamma(0, {0}, mu, SymbolicHFunction(mu, EvenPolynomial::constant(1, 1)), grid),
                    DecayRequired);
    CHECK_THROWS_AS(default_sup_grid(SymbolicHFunction(mu, EvenPolynomial::constant(1, 1))), DecayRequired);
}

TEST_CASE("seminorm_lambda examples") {
    const MuVector mu{half};
    const auto phi = gaussian(mu);
    const auto grid = default_sup_grid(phi);
    for (std::uint32_t m = 0; m <= 2; ++m)
        CHECK(seminorm_lambda(m, {0}, mu, phi, grid) == seminorm_gamma(m, {0}, mu, phi, grid));
    CHECK(seminorm_lambda(0, {1}, mu, phi, grid) == Approx(3.0).epsilon(1e-14));
}

TEST_CASE("seminorm_rho") {
    const MuVector mu{half};
    const auto phi = gaussian(mu);
    const auto grid = default_sup_grid(phi);
    CHECK(seminorm_rho(0, mu, phi, grid) == seminorm_lambda(0, {0}, mu, phi, grid));
    double sum = 0.0;
    for (std::uint32_t m = 0; m <= 1; ++m)
        for (std::uint32_t k = 0; k <= 1; ++k) sum += seminorm_lambda(m, {k}, mu, phi, grid);
    CHECK(seminorm_rho(1, mu, phi, grid) == Approx(sum).epsilon(1e-15));

    std::mt19937 rng(4);
    std::uniform_int_distribution<int> num(-4, 4);
    for (int t = 0; t < 5; ++t) {
        const MuVector m2{make_rational(t, 2), half};
        EvenPolynomial q(2);
        for (const auto& k : mi_graded_enumerate(2, 2)) q.add_term(k, num(rng));
        q.add_term({0, 0}, 5);
        const SymbolicHFunction f(m2, q, make_rational(1 + t, 3));
        const auto g = default_sup_grid(f, 60);
        double prev = 0.0;
        for (std::uint32_t R = 0; R <= 2; ++R) {
            const double r = seminorm_rho(R, m2, f, g);
            CHECK(r >= prev);
            prev = r;
        }
    }
}

TEST_CASE("lambda is bounded by the Koh-Zemanian gamma sum") {
    std::mt19937 rng(12);
    std::uniform_int_distribution<int> num(-3, 3);
    for (int t = 0; t < 6; ++t) {
        const std::size_t n = 1 + t % 2;
        const MuVector mu = MuVector::uniform(n, make_rational(t - 1, 2));
        EvenPolynomial q(n);
        for (const auto& k : mi_graded_enumerate(n, 2)) q.add_term(k, num(rng));
        q.add_term(MultiIndex(n), 1);
        const SymbolicHFunction f(mu, q, make_rational(1 + t % 3, 2));
        const auto grid = default_sup_grid(f, n == 1 ? 200 : 60);
        for (std::uint32_t m = 0; m <= 2; ++m)
            for (const auto& k : mi_graded_enumerate(n, 2)) CHECK(compare_seminorms(m, k, mu, f, grid).holds);
    }
}
