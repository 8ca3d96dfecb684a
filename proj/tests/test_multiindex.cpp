#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hankelc/multiindex.hpp"

using namespace hankelc;

TEST_CASE("length sums the entries") {
    CHECK(mi_length({0, 0, 0}) == 0);
    CHECK(mi_length({2, 1}) == 3);
    CHECK(mi_length({1, 0, 4, 2}) == 7);
}

TEST_CASE("factorial is componentwise and exact") {
    CHECK(mi_factorial({0, 0}) == 1);
    CHECK(mi_factorial({3, 2}) == 12);
    CHECK(mi_factorial({4}) == 24);
    // 25! does not fit in 64 bits.
    CHECK(mi_factorial({25}).str() == "15511210043330985984000000");
}

TEST_CASE("binomial is componentwise") {
    CHECK(mi_binomial({2, 2}, {1, 1}) == 4);
    CHECK(mi_binomial({3, 1}, {0, 0}) == 1);
    CHECK(mi_binomial({4, 2}, {2, 1}) == 12);
    CHECK_THROWS_AS(mi_binomial({1, 1}, {2, 0}), ComponentExceeds);
    CHECK_THROWS_AS(mi_binomial({1, 1}, {1}), DimensionMismatch);
}

TEST_CASE("mi_below enumerates the box in graded-lex order") {
    CHECK(mi_below({1}) == std::vector<MultiIndex>{{0}, {1}});
    CHECK(mi_below({1, 1}) == std::vector<MultiIndex>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    CHECK(mi_below({2, 0}) == std::vector<MultiIndex>{{0, 0}, {1, 0}, {2, 0}});
}

TEST_CASE("mi_graded_enumerate ordering") {
    CHECK(mi_graded_enumerate(2, 1) == std::vector<MultiIndex>{{0, 0}, {0, 1}, {1, 0}});
    CHECK(mi_graded_enumerate(1, 3) == std::vector<MultiIndex>{{0}, {1}, {2}, {3}});
    CHECK(mi_graded_enumerate(3, 0) == std::vector<MultiIndex>{{0, 0, 0}});
}

TEST_CASE("box and enumeration identities on random indices") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> dim(1, 4), ent(0, 5);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = dim(rng);
        MultiIndex k(n);
        for (int i = 0; i < n; ++i) k[i] = ent(rng);
        const auto box = mi_below(k);
        std::size_t expected = 1;
        for (auto v : k) expected *= v + 1;
        REQUIRE(box.size() == expected);
        BigInt sum = 0;
        for (const auto& j : box) {
            const BigInt b = mi_binomial(k, j);
            CHECK(b >= 1);
            sum += b;
        }
        CHECK(sum == BigInt(1) << static_cast<unsigned>(k.length()));
        CHECK(std::is_sorted(box.begin(), box.end()));
    }
    for (std::size_t n = 1; n <= 4; ++n)
        for (std::uint32_t D = 0; D <= 5; ++D)
            CHECK(BigInt(mi_graded_enumerate(n, D).size()) == binomial(n + D, n));
}
