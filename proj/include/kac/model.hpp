#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kac {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Index of the limiting stable law for inelasticity p: alpha = 2/(1+p).
inline double alpha_of(double p) {
    if (!(p >= 0.0) || !std::isfinite(p))
        throw std::invalid_argument("alpha_of: inelasticity p must be finite and >= 0");
    return 2.0 / (1.0 + p);
}

/// Model parameters. alpha is always derived from p, never stored separately.
struct ModelParams {
    double p = 0.0;

    ModelParams() = default;
    explicit ModelParams(double p_) : p(p_) {
        (void)alpha_of(p); // validates
    }

    double alpha() const { return 2.0 / (1.0 + p); }
    bool elastic() const { return p == 0.0; }
};

/// Fold an angle into the canonical interval (0, 2*pi]; 0 maps to 2*pi.
inline double normalize_angle(double theta) {
    double r = std::fmod(theta, two_pi);
    if (r <= 0.0) r += two_pi;
    return r;
}

namespace detail {

// x |x|^p with pow-free paths for the small integer exponents
inline double signed_power(double x, double p) {
    if (p == 0.0) return x;
    if (p == 1.0) return x * std::abs(x);
    if (p == 2.0) return x * x * x;
    if (p == 3.0) return x * x * x * std::abs(x);
    return x * std::pow(std::abs(x), p);
}

} // namespace detail

/// Collision kernel cos(theta)*|cos(theta)|^p.
inline double cos_kernel(double p, double theta) {
    return detail::signed_power(std::cos(theta), p);
}

/// Collision kernel sin(theta)*|sin(theta)|^p.
inline double sin_kernel(double p, double theta) {
    return detail::signed_power(std::sin(theta), p);
}

} // namespace kac
