#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "kac/oscillatory.hpp"
#include "kac/quadrature.hpp"

using namespace kac;

TEST_CASE("gauss-legendre weights sum to 2 and nodes are symmetric") {
    for (const int n : {4, 8, 16, 32, 64, 128}) {
        const QuadRule r = gauss_legendre(n);
        double total = 0.0;
        for (double w : r.weights) total += w;
        CHECK(total == Catch::Approx(2.0).margin(1e-13));
        for (int i = 0; i < n; ++i)
            CHECK(r.nodes[i] == Catch::Approx(-r.nodes[n - 1 - i]).margin(1e-14));
    }
}

TEST_CASE("gauss-legendre integrates polynomials of degree 2n-1 exactly") {
    const QuadRule r = gauss_legendre(8);
    for (int k = 0; k <= 15; ++k) {
        const double got = integrate_gl([k](double x) { return std::pow(x, k); }, -1.0, 1.0, r);
        const double expect = (k % 2) ? 0.0 : 2.0 / (k + 1);
        CHECK(got == Catch::Approx(expect).margin(1e-13));
    }
}

TEST_CASE("gauss-legendre handles smooth transcendentals") {
    const QuadRule r = gauss_legendre(24);
    CHECK(integrate_gl([](double x) { return std::exp(x); }, 0.0, 1.0, r) ==
          Catch::Approx(std::exp(1.0) - 1.0).margin(1e-14));
    CHECK(integrate_panels([](double x) { return std::cos(x); }, 0.0, two_pi, 4, r) ==
          Catch::Approx(0.0).margin(1e-13));
}

TEST_CASE("oscillatory tail integral matches small closed forms") {
    // int_y^inf sin(u)/u^2 du at y = pi: by parts = 1/pi - Ci(pi)-ish; instead
    // compare against a brute-force fine quadrature over a long window.
    const QuadRule fine = gauss_legendre(64);
    for (const double s : {1.5, 2.0, 3.2}) {
        for (const double y : {1.0, 3.0, 10.0}) {
            double brute = 0.0;
            const double cutoff = 4000.0;
            const int panels = int((cutoff - y) / 2.0);
            brute = integrate_panels([s](double u) { return std::sin(u) * std::pow(u, -s); },
                                     y, cutoff, panels, fine);
            // remainder beyond cutoff is below 2*cutoff^-s
            const double got = trig_tail_integral(s, y, true);
            CHECK(got == Catch::Approx(brute).margin(4.0 * std::pow(cutoff, -s)));
        }
    }
}

TEST_CASE("one_minus_cos integral agrees with direct quadrature") {
    // substitute u = v^2 so that the endpoint power singularity integrates
    // cleanly under the panel rule
    const QuadRule fine = gauss_legendre(64);
    for (const double a0 : {0.5, 1.0, 1.5}) {
        for (const double y : {0.3, 2.0, 9.0}) {
            const double brute = integrate_panels(
                [a0](double v) {
                    const double half = std::sin(0.5 * v * v);
                    return 4.0 * half * half * std::pow(v, -1.0 - 2.0 * a0);
                },
                1e-9, std::sqrt(y), 400, fine);
            CHECK(one_minus_cos_power_integral(a0, y) == Catch::Approx(brute).margin(1e-9));
        }
    }
}
