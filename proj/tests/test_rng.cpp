#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "kac/rng.hpp"

using namespace kac;

TEST_CASE("philox4x32-10 matches the published known-answer vectors") {
    using philox::block;
    using philox::key;
    CHECK(philox::generate(block{0, 0, 0, 0}, key{0, 0}) ==
          block{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    CHECK(philox::generate(block{0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                           key{0xffffffffu, 0xffffffffu}) ==
          block{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
    CHECK(philox::generate(block{0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                           key{0xa4093822u, 0x299f31d0u}) ==
          block{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("streams are deterministic and distinct") {
    SeededStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
    bool all_equal_c = true, all_equal_d = true;
    for (int i = 0; i < 64; ++i) {
        const auto va = a.next_u64();
        REQUIRE(va == b.next_u64());
        if (va != c.next_u64()) all_equal_c = false;
        if (va != d.next_u64()) all_equal_d = false;
    }
    CHECK_FALSE(all_equal_c);
    CHECK_FALSE(all_equal_d);
}

TEST_CASE("uniform01 lies in [0,1) with the right mean") {
    SeededStream rng(123, 0);
    const int n = 200000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform01();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    // mean 1/2, sd of the mean = 1/sqrt(12 n)
    CHECK(sum / n == Catch::Approx(0.5).margin(4.0 / std::sqrt(12.0 * n)));
}

TEST_CASE("uniform_index covers the range without gaps") {
    SeededStream rng(9, 0);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 1000; ++i) {
        const auto k = rng.uniform_index(7);
        REQUIRE(k < 7);
        seen.insert(k);
    }
    CHECK(seen.size() == 7);
}

TEST_CASE("normal draws have unit variance") {
    SeededStream rng(2024, 3);
    const int n = 100000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.standard_normal();
        sum += x;
        sum2 += x * x;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(mean == Catch::Approx(0.0).margin(4.0 / std::sqrt(double(n))));
    CHECK(var == Catch::Approx(1.0).margin(4.0 * std::sqrt(2.0 / n)));
}

TEST_CASE("uniform angles land in (0, 2pi]") {
    SeededStream rng(5, 5);
    for (int i = 0; i < 10000; ++i) {
        const double a = rng.uniform_angle();
        REQUIRE(a > 0.0);
        REQUIRE(a <= two_pi);
    }
}
