#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "kac/stable.hpp"

using namespace kac;

TEST_CASE("stable cf point values") {
    CHECK(stable_cf(StableSpec(1.0, 1.0), 0.0) == 1.0);
    CHECK(stable_cf(StableSpec(2.0, 0.5), 1.0) == Catch::Approx(std::exp(-0.5)).epsilon(1e-14));
    CHECK(stable_cf(StableSpec(0.7, 0.0), 123.4) == 1.0);
    CHECK(stable_cf(StableSpec(1.0, 2.0), -3.0) ==
          Catch::Approx(stable_cf(StableSpec(1.0, 2.0), 3.0)));
}

TEST_CASE("StableSpec validates its domain") {
    CHECK_THROWS_AS(StableSpec(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(StableSpec(2.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(StableSpec(1.0, -0.1), std::invalid_argument);
}

TEST_CASE("equilibrium scale constant: frozen values") {
    // a0 = 2 c0 k(alpha); k(1) = pi/2 and k(1/2) = sqrt(pi/2)
    CHECK(a0_from_c0(1.0, 1.0) == Catch::Approx(std::numbers::pi).epsilon(1e-12));
    CHECK(a0_from_c0(1.0, 0.5) ==
          Catch::Approx(2.0 * std::sqrt(std::numbers::pi / 2.0)).epsilon(1e-12));
    CHECK(a0_from_c0(0.0, 1.3) == 0.0);
    CHECK_THROWS_AS(a0_from_c0(-1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(a0_from_c0(1.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(a0_from_c0(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("closed form and oscillatory oracle agree on an alpha grid") {
    // includes alpha near 1 where the naive product form is indeterminate
    for (int i = 0; i < 20; ++i) {
        const double alpha = 0.1 + (1.9 - 0.1) * i / 19.0;
        const double closed = stable_scale_constant(alpha);
        const double oracle = stable_scale_constant_oracle(alpha);
        INFO("alpha = " << alpha);
        CHECK(std::abs(closed - oracle) < 1e-8);
    }
    CHECK(stable_scale_constant(1.0) == Catch::Approx(std::numbers::pi / 2.0).epsilon(1e-14));
}

TEST_CASE("stable sampler: degenerate and gaussian branches") {
    const auto zeros = sample_stable(StableSpec(1.2, 0.0), 100, 7);
    for (double v : zeros) REQUIRE(v == 0.0);

    const std::size_t n = 1000000;
    const auto gauss = sample_stable(StableSpec(2.0, 0.5), n, 99);
    double sum = 0.0, sum2 = 0.0;
    for (double v : gauss) {
        sum += v;
        sum2 += v * v;
    }
    const double var = sum2 / n - (sum / n) * (sum / n);
    CHECK(var == Catch::Approx(1.0).margin(0.01)); // variance = 2 a0 = 1
}

TEST_CASE("stable sampler matches its own cf empirically") {
    const std::size_t n = 1000000;
    for (const double alpha : {0.5, 1.0, 1.5, 2.0}) {
        const StableSpec spec(alpha, 1.0);
        const auto xs = sample_stable(spec, n, 4242);
        for (const double xi : {0.5, 1.0, 2.0, 4.0}) {
            double re = 0.0;
            for (double x : xs) re += std::cos(xi * x);
            re /= double(n);
            INFO("alpha = " << alpha << ", xi = " << xi);
            CHECK(std::abs(re - stable_cf(spec, xi)) < 5.0 / std::sqrt(double(n)));
        }
    }
}
