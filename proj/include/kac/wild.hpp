#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "kac/cf_grid.hpp"
#include "kac/errors.hpp"
#include "kac/model.hpp"
#include "kac/parallel.hpp"
#include "kac/quadrature.hpp"

namespace kac {

struct SolverConfig {
    int grid_size = 2049;
    double xi_max = 8.0;
    int quad_nodes = 128;   // theta-quadrature nodes over one period
    double series_eps = 1e-10;
    int max_terms = 400;    // hard cap on series terms per evaluation
    bool allow_restarts = true;
    int leg_terms_target = 24;
    bool fold_quadrants = false; // optimization for even real inputs; off by default

    void validate() const {
        if (grid_size < 9) throw ConfigError("solver.grid_size must be >= 9");
        if (!(xi_max > 0.0)) throw ConfigError("solver.xi_max must be > 0");
        if (quad_nodes < 8 || quad_nodes % 2 != 0)
            throw ConfigError("solver.quad_nodes must be even and >= 8");
        if (!(series_eps > 0.0 && series_eps < 1.0))
            throw ConfigError("solver.series_eps must lie in (0, 1)");
        if (max_terms < 2) throw ConfigError("solver.max_terms must be >= 2");
        if (leg_terms_target < 2 || leg_terms_target > max_terms)
            throw ConfigError("solver.leg_terms_target must lie in [2, max_terms]");
    }
};

/// Theta quadrature with the collision kernels baked in. Composite
/// Gauss-Legendre over the four quadrants of (0, 2*pi]; the kernels are
/// analytic inside each quadrant. Weights are normalized so that constants
/// integrate to exactly 1 (the 1/(2*pi) factor included).
struct ThetaRule {
    std::vector<double> c, s, w;

    ThetaRule(const ModelParams& params, const SolverConfig& config) {
        const int quadrants = config.fold_quadrants ? 1 : 4;
        const int per_quadrant = (config.quad_nodes + 3) / 4;
        const QuadRule gl = gauss_legendre(per_quadrant);
        const double quarter = std::numbers::pi / 2.0;
        double total = 0.0;
        for (int q = 0; q < quadrants; ++q) {
            const double a = q * quarter, b = a + quarter;
            for (int i = 0; i < per_quadrant; ++i) {
                const double theta = 0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[i];
                c.push_back(cos_kernel(params.p, theta));
                s.push_back(sin_kernel(params.p, theta));
                w.push_back(gl.weights[i]);
                total += gl.weights[i];
            }
        }
        for (double& wi : w) wi /= total;
    }
};

namespace detail {

inline CfGrid convolve(const CfGrid& g1, const CfGrid& g2, const ThetaRule& rule,
                       double alpha) {
    CfGrid out(g1.xi_max(), g1.size());
    const GridEvaluator e1(g1, alpha);
    const GridEvaluator e2(g2, alpha);
    parallel_ranges(g1.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const double xi = g1.node(i);
            std::complex<double> acc{0.0, 0.0};
            for (std::size_t q = 0; q < rule.w.size(); ++q)
                acc += rule.w[q] * e1(xi * rule.c[q]) * e2(xi * rule.s[q]);
            out[i] = acc;
        }
    });
    return out;
}

/// Smallest N with (1 - e^{-t})^N < eps.
inline int terms_needed(double t, double eps) {
    const double log_fail = std::log1p(-std::exp(-t)); // < 0
    const double n = std::log(eps) / log_fail;
    return std::max(1, int(std::floor(n)) + 1);
}

/// One truncated Wild sum of duration t from the given initial grid.
/// The residual geometric weight is assigned to the last computed term, so
/// the value at xi = 0 stays exactly 1.
inline CfGrid wild_sum(const CfGrid& phi0, double t, int terms, const ThetaRule& rule,
                       double alpha) {
    std::vector<CfGrid> q;
    q.reserve(terms);
    q.push_back(phi0);
    for (int n = 2; n <= terms; ++n) {
        CfGrid qn(phi0.xi_max(), phi0.size());
        for (int j = 1; 2 * j <= n - 1; ++j) {
            const CfGrid c = convolve(q[j - 1], q[n - j - 1], rule, alpha);
            for (std::size_t i = 0; i < qn.size(); ++i) qn[i] += 2.0 * c[i];
        }
        if ((n - 1) % 2 == 1) { // middle term q_{n/2} * q_{n/2}
            const CfGrid c = convolve(q[n / 2 - 1], q[n / 2 - 1], rule, alpha);
            for (std::size_t i = 0; i < qn.size(); ++i) qn[i] += c[i];
        }
        const double inv = 1.0 / double(n - 1);
        for (std::size_t i = 0; i < qn.size(); ++i) qn[i] *= inv;
        q.push_back(std::move(qn));
    }
    const double fail = -std::expm1(-t); // 1 - e^{-t}
    CfGrid out(phi0.xi_max(), phi0.size());
    double weight = std::exp(-t);
    double tail = 1.0;
    for (int n = 1; n <= terms; ++n) {
        tail -= weight;
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += weight * q[n - 1][i];
        weight *= fail;
    }
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += tail * q[terms - 1][i];
    return out;
}

} // namespace detail

/// How a solve was scheduled, for run manifests and tests.
struct SolveReport {
    int legs = 0;
    int terms_per_leg = 0;
    double leg_remainder = 0.0;   // geometric mass beyond the computed terms, per leg
    double remainder_bound = 0.0; // <= 2 * legs * leg_remainder
};

/// The p-Wild convolution g1*g2 on the shared grid of its arguments.
inline CfGrid p_wild_convolution(const CfGrid& g1, const CfGrid& g2,
                                 const ModelParams& params, const SolverConfig& config) {
    config.validate();
    if (!g1.same_grid(g2))
        throw std::invalid_argument("p_wild_convolution: grids must match");
    if (config.fold_quadrants && !(g1.all_real() && g2.all_real()))
        throw std::invalid_argument("p_wild_convolution: quadrant folding needs real even inputs");
    return detail::convolve(g1, g2, ThetaRule(params, config), params.alpha());
}

/// The first N terms of the Wild recursion from phi0.
inline std::vector<CfGrid> wild_terms(const CfGrid& phi0, const ModelParams& params,
                                      const SolverConfig& config, int N) {
    config.validate();
    if (N < 1) throw std::invalid_argument("wild_terms: N must be >= 1");
    const ThetaRule rule(params, config);
    const double alpha = params.alpha();
    std::vector<CfGrid> q;
    q.reserve(N);
    q.push_back(phi0);
    for (int n = 2; n <= N; ++n) {
        CfGrid qn(phi0.xi_max(), phi0.size());
        for (int j = 1; j <= n - 1; ++j) {
            const CfGrid c = detail::convolve(q[n - j - 1], q[j - 1], rule, alpha);
            for (std::size_t i = 0; i < qn.size(); ++i) qn[i] += c[i];
        }
        const double inv = 1.0 / double(n - 1);
        for (std::size_t i = 0; i < qn.size(); ++i) qn[i] *= inv;
        q.push_back(std::move(qn));
    }
    return q;
}

/// Evaluate the solution at time t from a symmetric (real) initial grid by
/// the truncated Wild sum. When the single-shot truncation level would blow
/// past the term cap, the evolution is split into equal restart legs, each
/// summed to the same per-leg geometric bound.
inline CfGrid solve_cf(const CfGrid& phi0, const ModelParams& params, double t,
                       const SolverConfig& config, SolveReport* report = nullptr) {
    config.validate();
    if (!(t >= 0.0)) throw std::invalid_argument("solve_cf: t must be >= 0");
    if (t == 0.0) {
        if (report) *report = {0, 0, 0.0, 0.0};
        return phi0;
    }
    const double eps = config.series_eps / 2.0;
    int legs = 1;
    int terms = detail::terms_needed(t, eps);
    if (terms > config.leg_terms_target && config.allow_restarts) {
        // leg length with exactly the target term count
        const double tau = -std::log1p(-std::pow(eps, 1.0 / config.leg_terms_target));
        legs = std::max(1, int(std::ceil(t / tau)));
        terms = detail::terms_needed(t / legs, eps);
    }
    if (terms > config.max_terms) {
        const double bound = std::pow(-std::expm1(-t / legs), config.max_terms);
        throw NumericalGuard("solve_cf: series needs " + std::to_string(terms) +
                             " terms, above the cap " + std::to_string(config.max_terms) +
                             "; achieved remainder bound would be " + std::to_string(bound));
    }
    const ThetaRule rule(params, config);
    const double tau = t / legs;
    CfGrid phi = phi0;
    for (int leg = 0; leg < legs; ++leg)
        phi = detail::wild_sum(phi, tau, terms, rule, params.alpha());
    if (report) {
        const double leg_rem = std::pow(-std::expm1(-tau), terms);
        *report = {legs, terms, leg_rem, 2.0 * legs * leg_rem};
    }
    return phi;
}

/// General (possibly asymmetric) initial data: the imaginary part of phi0
/// rides along as i e^{-t} Im(phi0) while the real part evolves by the
/// symmetric solver.
inline CfGrid solve_cf_asymmetric(const CfGrid& phi0_full, const ModelParams& params,
                                  double t, const SolverConfig& config,
                                  SolveReport* report = nullptr) {
    if (!(t >= 0.0)) throw std::invalid_argument("solve_cf_asymmetric: t must be >= 0");
    if (t == 0.0) {
        if (report) *report = {0, 0, 0.0, 0.0};
        return phi0_full;
    }
    CfGrid out = solve_cf(phi0_full.real_part(), params, t, config, report);
    const double damp = std::exp(-t);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] += std::complex<double>(0.0, damp * phi0_full[i].imag());
    return out;
}

/// sup over grid nodes of |phi * phi - phi|: zero exactly at fixed points.
inline double fixed_point_residual(const CfGrid& phi, const ModelParams& params,
                                   const SolverConfig& config) {
    const CfGrid conv = p_wild_convolution(phi, phi, params, config);
    double worst = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i)
        worst = std::max(worst, std::abs(conv[i] - phi[i]));
    return worst;
}

} // namespace kac
