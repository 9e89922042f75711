#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kac/laws.hpp"
#include "kac/mckean.hpp"
#include "kac/model.hpp"
#include "kac/parallel.hpp"
#include "kac/stable.hpp"

namespace kac {

// ---------------------------------------------------------------------------
// order statistics

/// Type-7 quantile (linear interpolation) of unsorted data.
inline double quantile(std::vector<double> data, double q) {
    if (data.empty()) throw std::invalid_argument("quantile: empty data");
    q = std::clamp(q, 0.0, 1.0);
    std::sort(data.begin(), data.end());
    const double pos = q * double(data.size() - 1);
    const std::size_t lo = std::size_t(pos);
    if (lo + 1 >= data.size()) return data.back();
    const double frac = pos - double(lo);
    return data[lo] + frac * (data[lo + 1] - data[lo]);
}

inline double median_abs(std::span<const double> xs) {
    std::vector<double> mags(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) mags[i] = std::abs(xs[i]);
    return quantile(std::move(mags), 0.5);
}

inline double interquartile_range(std::span<const double> xs) {
    std::vector<double> v(xs.begin(), xs.end());
    std::sort(v.begin(), v.end());
    const double pos25 = 0.25 * double(v.size() - 1), pos75 = 0.75 * double(v.size() - 1);
    auto at = [&](double pos) {
        const std::size_t lo = std::size_t(pos);
        if (lo + 1 >= v.size()) return v.back();
        return v[lo] + (pos - double(lo)) * (v[lo + 1] - v[lo]);
    };
    return at(pos75) - at(pos25);
}

// ---------------------------------------------------------------------------
// tail diagnostics

/// rho(x) = x^alpha (1 - F0*(x)) at probe points, with the finite-sample
/// c0 rule: mean over the top decade of probes, flagged not-convergent when
/// those values spread by more than 25% relative.
struct TailReport {
    double alpha = 0.0;
    std::vector<double> xs;
    std::vector<double> rho;
    std::optional<double> c0; // nullopt = not-convergent
    std::string method;       // "analytic" or "empirical"
};

inline TailReport rho_curve(const SymmetrizedLaw& law, double alpha,
                            std::span<const double> xs) {
    if (xs.empty()) throw std::invalid_argument("rho_curve: needs at least one probe");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0)) throw std::invalid_argument("rho_curve: probes must be > 0");
        if (i > 0 && !(xs[i] > xs[i - 1]))
            throw std::invalid_argument("rho_curve: probes must be strictly increasing");
    }
    TailReport rep;
    rep.alpha = alpha;
    rep.xs.assign(xs.begin(), xs.end());
    rep.rho.resize(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        rep.rho[i] = std::pow(xs[i], alpha) * law.tail(xs[i]);
    rep.method = std::holds_alternative<law::Empirical>(law.base().variant())
                     ? "empirical" : "analytic";

    const double cutoff = xs.back() / 10.0;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0, sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] < cutoff) continue;
        lo = std::min(lo, rep.rho[i]);
        hi = std::max(hi, rep.rho[i]);
        sum += rep.rho[i];
        ++count;
    }
    const double mean = sum / double(count);
    if (mean == 0.0)
        rep.c0 = 0.0;
    else if ((hi - lo) / mean <= 0.25)
        rep.c0 = mean;
    return rep;
}

/// Log-spaced probes covering the upper half of an empirical sample. The top
/// probe keeps a few hundred exceedances behind it: beyond that point the
/// empirical tail is statistical noise and the c0 rule would flag any sample.
inline std::vector<double> default_tail_probes(std::span<const double> samples,
                                               std::size_t count = 32) {
    std::vector<double> mags;
    mags.reserve(samples.size());
    for (double x : samples)
        if (std::abs(x) > 0.0) mags.push_back(std::abs(x));
    if (mags.empty()) return {1.0};
    const double lo = std::max(quantile(mags, 0.5), 1e-12);
    const double q_hi = std::max(0.9, 1.0 - 400.0 / double(mags.size()));
    const double hi = quantile(mags, q_hi);
    if (!(hi > lo)) return {lo};
    std::vector<double> xs(count);
    for (std::size_t i = 0; i < count; ++i)
        xs[i] = lo * std::pow(hi / lo, double(i) / double(count - 1));
    return xs;
}

// ---------------------------------------------------------------------------
// empirical characteristic functions

inline std::vector<std::complex<double>> empirical_cf(std::span<const double> samples,
                                                      std::span<const double> xis) {
    if (samples.empty()) throw std::invalid_argument("empirical_cf: empty sample");
    std::vector<std::complex<double>> out(xis.size());
    parallel_ranges(xis.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t k = lo; k < hi; ++k) {
            double re = 0.0, im = 0.0;
            for (const double x : samples) {
                re += std::cos(xis[k] * x);
                im += std::sin(xis[k] * x);
            }
            out[k] = {re / double(samples.size()), im / double(samples.size())};
        }
    });
    return out;
}

inline double cf_sup_distance(std::span<const std::complex<double>> a,
                              std::span<const std::complex<double>> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("cf_sup_distance: grids must match");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

// ---------------------------------------------------------------------------
// two-sample Kolmogorov-Smirnov

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

inline KsResult ks_two_sample(std::vector<double> x, std::vector<double> y) {
    if (x.empty() || y.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double nx = double(x.size()), ny = double(y.size());
    std::size_t i = 0, j = 0;
    double fx = 0.0, fy = 0.0, d = 0.0;
    while (i < x.size() && j < y.size()) {
        const double xi = x[i], yj = y[j];
        if (xi <= yj) fx = double(++i) / nx;
        if (yj <= xi) fy = double(++j) / ny;
        d = std::max(d, std::abs(fx - fy));
    }
    KsResult r;
    r.statistic = d;
    const double ne = std::sqrt(nx * ny / (nx + ny));
    const double lambda = (ne + 0.12 + 0.11 / ne) * d;
    // asymptotic Kolmogorov survival function
    double p = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
        p += term;
        if (std::abs(term) < 1e-16) break;
        sign = -sign;
    }
    r.p_value = std::clamp(2.0 * p, 0.0, 1.0);
    if (d == 0.0) r.p_value = 1.0;
    return r;
}

// ---------------------------------------------------------------------------
// equilibrium verification

enum class LimitVerdict {
    stable_limit,     // converges to a nondegenerate stable law
    degenerate_limit, // converges to the point mass at 0
    divergent,        // tail condition fails upward: no weak limit
};

inline const char* to_string(LimitVerdict v) {
    switch (v) {
        case LimitVerdict::stable_limit: return "stable-limit";
        case LimitVerdict::degenerate_limit: return "degenerate-limit";
        case LimitVerdict::divergent: return "divergent";
    }
    return "?";
}

struct ConvergenceReport {
    double t = 0.0;
    std::size_t sample_size = 0;
    LimitVerdict verdict = LimitVerdict::stable_limit;
    std::optional<StableSpec> target;
    std::optional<double> c0;
    std::string c0_method;
    double cf_sup_dist = std::numeric_limits<double>::quiet_NaN();
    double ks_statistic = std::numeric_limits<double>::quiet_NaN();
    double ks_p_value = std::numeric_limits<double>::quiet_NaN();
    double median_abs_v = 0.0;
    double iqr = 0.0;
    std::uint64_t cap_events = 0;
    std::vector<double> cf_xis;
    std::vector<std::complex<double>> cf_emp;
};

/// Frequencies for CF comparisons; weak convergence shows up pointwise and
/// the stable fit is driven by small xi, so [0, 4] by default.
inline std::vector<double> default_cf_probe_grid(double xi_hi = 4.0, std::size_t count = 81) {
    std::vector<double> xis(count);
    for (std::size_t i = 0; i < count; ++i)
        xis[i] = xi_hi * double(i) / double(count - 1);
    return xis;
}

/// Classify the predicted limit for (params, law) and measure the distance
/// of a time-t ensemble from it. Streams (seed, 0..n-1) feed the ensemble;
/// the stable reference sample for the KS test uses streams offset by 2^32.
inline ConvergenceReport equilibrium_check(const ModelParams& params, const InitialLaw& law,
                                           double t, std::size_t n, std::uint64_t seed) {
    ConvergenceReport rep;
    rep.t = t;
    rep.sample_size = n;

    const double alpha = params.alpha();
    if (params.elastic()) {
        // classical rule: Gaussian limit iff the variance is finite
        const auto var = law.variance();
        if (var) {
            rep.target = StableSpec(2.0, *var / 2.0);
            rep.c0_method = "variance";
        } else {
            rep.verdict = LimitVerdict::divergent;
            rep.c0_method = "variance";
        }
    } else {
        TailConstant tc = law.tail_constant(alpha);
        if (tc.kind == TailClass::estimate) {
            const auto& emp = std::get<law::Empirical>(law.variant());
            const auto probes = default_tail_probes(emp.samples);
            const TailReport tail = rho_curve(symmetrize(law), alpha, probes);
            rep.c0_method = "estimated";
            if (tail.c0) {
                rep.c0 = tail.c0;
                rep.target = StableSpec(alpha, a0_from_c0(*tail.c0, alpha));
            } else {
                rep.verdict = LimitVerdict::divergent;
            }
        } else if (tc.kind == TailClass::finite) {
            rep.c0 = tc.c0;
            rep.c0_method = "analytic";
            rep.target = StableSpec(alpha, a0_from_c0(tc.c0, alpha));
        } else {
            rep.c0_method = "analytic";
            rep.verdict = LimitVerdict::divergent;
        }
    }
    if (rep.target && rep.target->a0 == 0.0) rep.verdict = LimitVerdict::degenerate_limit;

    EnsembleResult ens = sample_ensemble(params, law, t, n, seed);
    rep.cap_events = ens.stats.cap_events;
    rep.median_abs_v = median_abs(ens.values);
    rep.iqr = interquartile_range(ens.values);

    if (rep.target) {
        rep.cf_xis = default_cf_probe_grid();
        rep.cf_emp = empirical_cf(ens.values, rep.cf_xis);
        std::vector<std::complex<double>> target_cf(rep.cf_xis.size());
        for (std::size_t i = 0; i < rep.cf_xis.size(); ++i)
            target_cf[i] = {stable_cf(*rep.target, rep.cf_xis[i]), 0.0};
        rep.cf_sup_dist = cf_sup_distance(rep.cf_emp, target_cf);
        const auto ref = sample_stable(*rep.target, n, seed, std::uint64_t(1) << 32);
        const KsResult ks = ks_two_sample(ens.values, ref);
        rep.ks_statistic = ks.statistic;
        rep.ks_p_value = ks.p_value;
    }
    return rep;
}

} // namespace kac
