#include <catch2/catch_amalgamated.hpp>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numbers>

#include "hankelc/bessel.hpp"

using namespace hankelc;
using Catch::Approx;

namespace {
const Rational half = make_rational(1, 2);
}

TEST_CASE("gamma_fn values and domain") {
    CHECK(gamma_fn(1.0) == Approx(1.0).epsilon(1e-15));
    CHECK(gamma_fn(0.5) == Approx(1.7724538509055160).epsilon(1e-14));
    CHECK(gamma_fn(5.0) == Approx(24.0).epsilon(1e-15));
    CHECK_THROWS_AS(gamma_fn(0.0), DomainError);
    CHECK_THROWS_AS(gamma_fn(-1.5), DomainError);
}

TEST_CASE("gamma recurrence holds to 1e-12 relative") {
    for (double x = 0.1; x <= 20.0; x += 0.0737) {
        const double g1 = gamma_fn(x + 1.0);
        CHECK(std::abs(g1 - x * gamma_fn(x)) <= 1e-12 * g1);
    }
}

TEST_CASE("bessel_j spot values") {
    CHECK(bessel_j(0.0, 0.0) == 1.0);
    CHECK(bessel_j(1.0, 0.0) == 0.0);
    CHECK(bessel_j(0.5, std::numbers::pi / 2) == Approx(2.0 / std::numbers::pi).margin(1e-12));
    // High-precision reference values.
    struct Case { double nu, z, ref; };
    const Case cases[] = {
        {0, 1, 0.765197686557966551449717526103},
        {0, 5.5, -0.00684386941781919682395867877418},
        {1, 10, 0.0434727461688614366697487680259},
        {2.5, 13, -0.137670859048410803665876573472},
        {20, 40, 0.127793933550848896250812688476},
        {0.3, 30, -0.130110791424175471855934764257},
        {-0.5, 25, 0.158173084042050562034844787056},
        {-0.25, 17, -0.121204151694586700621828437559},
        {7, 49, 0.114550384796268428493710153301},
        {0, 50, 0.0558123276692518150047504785294},
        {20, 12, 0.000251213270245399532026331560083},
        {3.7, 0.001, 3.96080386985717260273129220862e-14},
    };
    for (const auto& c : cases) {
        INFO("nu=" << c.nu << " z=" << c.z);
        CHECK(std::abs(bessel_j(c.nu, c.z) - c.ref) <= 1e-10);
    }
}

TEST_CASE("bessel_j matches an independent implementation across the accuracy box") {
    double worst = 0.0;
    for (double nu : {-0.5, -0.3, 0.0, 0.5, 1.0, 1.5, 2.25, 5.0, 10.0, 13.5, 20.0})
        for (double z = 0.05; z <= 50.0; z += 0.173) {
            const double err = std::abs(bessel_j(nu, z) - boost::math::cyl_bessel_j(nu, z));
            worst = std::max(worst, err);
        }
    CHECK(worst <= 1e-10);
}

TEST_CASE("bessel_j domain errors") {
    CHECK_THROWS_AS(bessel_j(-0.6, 1.0), DomainError);
    CHECK_THROWS_AS(bessel_j(0.0, -1.0), DomainError);
    CHECK_THROWS_AS(bessel_j(0.0, 250.0), DomainError);
    CHECK_NOTHROW(bessel_j(0.0, 250.0, 300.0));
    CHECK_THROWS_AS(reduced_bessel(-1.0, 1.0), DomainError);
}

TEST_CASE("half-order closed forms") {
    for (double z = 0.01; z <= 50.0; z += 0.0371) {
        const double s = std::sqrt(2.0 / (std::numbers::pi * z));
        CHECK(std::abs(bessel_j(0.5, z) - s * std::sin(z)) <= 1e-10);
        CHECK(std::abs(bessel_j(-0.5, z) - s * std::cos(z)) <= 1e-10);
    }
}

TEST_CASE("reduced_bessel limits") {
    CHECK(reduced_bessel(0.0, 0.0) == Approx(1.0).epsilon(1e-15));
    CHECK(reduced_bessel(0.5, 0.0) == Approx(0.797884560802865355879892119869).epsilon(1e-14));
    CHECK(reduced_bessel(0.5, 1e-9) == Approx(0.797884560802865355879892119869).epsilon(1e-14));
    CHECK(std::abs(reduced_bessel(0.5, std::numbers::pi)) <= 1e-15);
    // Continuous across the series/continued-fraction switch.
    for (double nu : {-0.5, 0.0, 1.5, 4.0})
        CHECK(reduced_bessel(nu, 12.0 + 1e-9) == Approx(reduced_bessel(nu, 12.0)).margin(1e-12));
}

TEST_CASE("Bessel derivative identity d/dz(z^-v J_v) = -z^-v J_{v+1}") {
    const double h = 1e-5;
    for (double nu : {0.0, 0.5, 1.0, 1.5})
        for (double z = 0.1; z <= 20.0; z += 0.0997) {
            const double fd = (reduced_bessel(nu, z + h) - reduced_bessel(nu, z - h)) / (2 * h);
            const double rhs = -std::pow(z, -nu) * bessel_j(nu + 1.0, z);
            CHECK(std::abs(fd - rhs) <= 1e-6);
        }
}

TEST_CASE("C_mu and C_k^mu") {
    CHECK(c_mu(MuVector{0}) == Approx(1.0).epsilon(1e-15));
    CHECK(c_mu(MuVector{half}) == Approx(1.25331413731550025).epsilon(1e-14));
    CHECK(c_mu(MuVector{half, -half}) == Approx(1.5707963267948966).epsilon(1e-14));

    CHECK(c_k_mu(MuVector{half}, {0}) == 1.0);
    CHECK(c_k_mu_exact(MuVector{half}, {1}) == make_rational(-1, 3));
    CHECK(c_k_mu_exact(MuVector{half, half}, {1, 1}) == make_rational(1, 9));

    // Gamma-based route: (-1)^|k| C_mu / C_{mu+k}.
    const MuVector mu{make_rational(1, 3), make_rational(5, 2)};
    for (const MultiIndex& k : {MultiIndex{0, 0}, MultiIndex{1, 0}, MultiIndex{2, 3}, MultiIndex{4, 1}}) {
        const double via_gamma = ((k.length() % 2) ? -1.0 : 1.0) * c_mu(mu) / c_mu(mu.shifted(k));
        CHECK(c_k_mu(mu, k) == Approx(via_gamma).epsilon(1e-12));
    }
}

TEST_CASE("C_k^mu shift recurrence") {
    const MuVector mu{make_rational(-1, 2), make_rational(7, 4), 0};
    for (const MultiIndex& k : {MultiIndex{0, 0, 0}, MultiIndex{1, 2, 0}, MultiIndex{3, 0, 2}}) {
        for (std::size_t j = 0; j < 3; ++j) {
            const double next = c_k_mu(mu, k + MultiIndex::unit(3, j));
            const double expect = c_k_mu(mu, k) * (-1.0) / (2.0 * (mu.value(j) + k[j] + 1.0));
            CHECK(next == Approx(expect).epsilon(1e-12));
        }
    }
}

TEST_CASE("MuVector validation") {
    CHECK_THROWS_AS(MuVector{-1}, DomainError);
    CHECK_NOTHROW(MuVector{-half});
    try {
        MuVector bad{0, make_rational(-3, 4)};
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("mu_i >= -1/2") != std::string::npos);
    }
}
