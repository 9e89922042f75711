#pragma once

#include <cmath>
#include <stdexcept>

#include "kac/quadrature.hpp"

namespace kac {

// Oscillatory power-law integrals shared by the stable-scale oracle and the
// heavy-tail characteristic functions. Strategy: explicit series where the
// integrand is singular, per-period Gauss-Legendre panels in the oscillatory
// midrange, and an integration-by-parts asymptotic expansion for the tail.

namespace detail {

inline const QuadRule& osc_rule() {
    static const QuadRule r = gauss_legendre(32);
    return r;
}

// Asymptotic tail: int_y^inf trig(u) u^{-s} du by repeated integration by
// parts. Valid once y is well past the last panel (terms shrink like (s+k)/y).
inline double trig_tail_asymptotic(double s, double y, bool sine, int depth = 18) {
    const double head = (sine ? std::cos(y) : -std::sin(y)) * std::pow(y, -s);
    if (depth == 0) return head;
    const double next = trig_tail_asymptotic(s + 1.0, y, !sine, depth - 1);
    return head + (sine ? -s : s) * next;
}

} // namespace detail

/// int_y^inf trig(u) u^{-s} du for s > 0, y > 0 (sine=true for sin).
/// Convergent absolutely for s > 1, conditionally otherwise.
inline double trig_tail_integral(double s, double y, bool sine) {
    if (!(y > 0.0)) throw std::invalid_argument("trig_tail_integral: y must be > 0");
    const double y_asym = 130.0;
    double acc = 0.0;
    double a = y;
    while (a < y_asym) {
        const double b = a + two_pi;
        acc += integrate_gl([&](double u) {
            return (sine ? std::sin(u) : std::cos(u)) * std::pow(u, -s);
        }, a, b, detail::osc_rule());
        a = b;
    }
    return acc + detail::trig_tail_asymptotic(s, a, sine);
}

/// int_0^inf sin(x) x^{-alpha} dx for alpha in (0, 2).
/// Head on [0, pi] by the sine power series, then periods + asymptotic tail.
inline double sin_power_integral(double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0))
        throw std::invalid_argument("sin_power_integral: alpha must lie in (0, 2)");
    const double pi = std::numbers::pi;
    // int_0^pi: sum_k (-1)^k pi^(2k+2-alpha) / ((2k+1)! (2k+2-alpha))
    double head = 0.0, fact = 1.0;
    for (int k = 0; k < 40; ++k) {
        if (k > 0) fact *= (2.0 * k) * (2.0 * k + 1.0); // (2k+1)!
        const double e = 2.0 * k + 2.0 - alpha;
        const double term = ((k % 2) ? -1.0 : 1.0) * std::pow(pi, e) / (fact * e);
        head += term;
        if (std::abs(term) < 1e-17 * std::abs(head)) break;
    }
    return head + trig_tail_integral(alpha, pi, /*sine=*/true);
}

/// J(y) = int_0^y (1 - cos u) u^{-1-alpha0} du for alpha0 in (0, 2).
inline double one_minus_cos_power_integral(double alpha0, double y) {
    if (!(alpha0 > 0.0 && alpha0 < 2.0))
        throw std::invalid_argument("one_minus_cos_power_integral: alpha0 must lie in (0, 2)");
    if (!(y >= 0.0)) throw std::invalid_argument("one_minus_cos_power_integral: y must be >= 0");
    if (y == 0.0) return 0.0;
    const double pi = std::numbers::pi;
    const double z = std::min(y, pi);
    // series: sum_{k>=1} (-1)^(k+1) z^(2k-alpha0) / ((2k)! (2k-alpha0))
    double acc = 0.0, fact = 1.0;
    for (int k = 1; k < 40; ++k) {
        fact *= (2.0 * k - 1.0) * (2.0 * k); // (2k)!
        const double e = 2.0 * k - alpha0;
        const double term = ((k % 2) ? 1.0 : -1.0) * std::pow(z, e) / (fact * e);
        acc += term;
        if (std::abs(term) < 1e-17 * (std::abs(acc) + 1e-300)) break;
    }
    if (y > pi) {
        const int panels = 1 + int((y - pi) / two_pi) * 2;
        acc += integrate_panels([&](double u) {
            return (1.0 - std::cos(u)) * std::pow(u, -1.0 - alpha0);
        }, pi, y, panels, detail::osc_rule());
    }
    return acc;
}

} // namespace kac
