#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "kac/oscillatory.hpp"
#include "kac/rng.hpp"

namespace kac {

/// Symmetric alpha-stable target: characteristic function exp(-a0 |xi|^alpha).
/// a0 == 0 encodes the degenerate point mass at the origin.
struct StableSpec {
    double alpha = 2.0;
    double a0 = 0.0;

    StableSpec() = default;
    StableSpec(double alpha_, double a0_) : alpha(alpha_), a0(a0_) {
        if (!(alpha > 0.0 && alpha <= 2.0))
            throw std::invalid_argument("StableSpec: alpha must lie in (0, 2]");
        if (!(a0 >= 0.0) || !std::isfinite(a0))
            throw std::invalid_argument("StableSpec: a0 must be finite and >= 0");
    }
};

inline double stable_cf(const StableSpec& spec, double xi) {
    if (spec.a0 == 0.0) return 1.0;
    return std::exp(-spec.a0 * std::pow(std::abs(xi), spec.alpha));
}

/// k(alpha) = int_0^inf sin(x) x^{-alpha} dx in closed form.
/// Gamma-reflection of cos(pi alpha/2) Gamma(1-alpha); finite and smooth
/// through alpha = 1 where it equals pi/2.
inline double stable_scale_constant(double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0))
        throw std::invalid_argument("stable_scale_constant: alpha must lie in (0, 2)");
    return std::numbers::pi / (2.0 * std::tgamma(alpha) * std::sin(std::numbers::pi * alpha / 2.0));
}

/// Same constant from period-summed oscillatory quadrature; kept as an
/// independent cross-check of the closed form.
inline double stable_scale_constant_oracle(double alpha) {
    return sin_power_integral(alpha);
}

/// Equilibrium scale from the tail constant: a0 = 2 c0 k(alpha).
inline double a0_from_c0(double c0, double alpha) {
    if (!(c0 >= 0.0) || !std::isfinite(c0))
        throw std::invalid_argument("a0_from_c0: c0 must be finite and >= 0");
    if (!(alpha > 0.0 && alpha < 2.0))
        throw std::invalid_argument("a0_from_c0: alpha must lie in (0, 2)");
    if (c0 == 0.0) return 0.0;
    return 2.0 * c0 * stable_scale_constant(alpha);
}

/// One standard symmetric-stable draw (unit scale, cf exp(-|xi|^alpha)).
/// Chambers-Mallows-Stuck transform; Cauchy and Gaussian branches are
/// special-cased to avoid the removable singularities.
inline double standard_stable_draw(double alpha, SeededStream& rng) {
    if (!(alpha > 0.0 && alpha <= 2.0))
        throw std::invalid_argument("standard_stable_draw: alpha must lie in (0, 2]");
    const double u = std::numbers::pi * (rng.uniform01() - 0.5); // (-pi/2, pi/2)
    if (alpha == 1.0) return std::tan(u);
    const double e = rng.exponential();
    if (alpha == 2.0) return 2.0 * std::sqrt(e) * std::sin(u); // variance 2
    const double su = std::sin(alpha * u);
    const double cu = std::cos(u);
    const double t = std::cos((1.0 - alpha) * u) / e;
    return su / std::pow(cu, 1.0 / alpha) * std::pow(t, (1.0 - alpha) / alpha);
}

inline double stable_draw(const StableSpec& spec, SeededStream& rng) {
    if (spec.a0 == 0.0) return 0.0;
    return std::pow(spec.a0, 1.0 / spec.alpha) * standard_stable_draw(spec.alpha, rng);
}

/// n i.i.d. draws with cf exp(-a0 |xi|^alpha), streams (seed, 0..n-1).
inline std::vector<double> sample_stable(const StableSpec& spec, std::size_t n,
                                         std::uint64_t seed,
                                         std::uint64_t stream_offset = 0) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        SeededStream rng(seed, stream_offset + i);
        out[i] = stable_draw(spec, rng);
    }
    return out;
}

} // namespace kac
