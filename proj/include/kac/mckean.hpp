#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "kac/errors.hpp"
#include "kac/laws.hpp"
#include "kac/model.hpp"
#include "kac/parallel.hpp"
#include "kac/rng.hpp"

namespace kac {

// Exact stochastic representation of the solution: the random collision
// count nu is geometric in e^{-t}, the binary McKean tree is grown by nu-1
// uniform splits, and the leaf weights are products of collision kernels
// along root-to-leaf paths. A velocity draw is sum_j beta_j X_j.

struct DrawStats {
    std::uint64_t cap_events = 0;
};

/// Truncated geometric mass below 1e-12 for any draw <= nu_cap(t).
inline constexpr double nu_tail_mass = 1e-12;

/// Memory guard: a single tree may not exceed this many leaves.
inline constexpr std::int64_t nu_hard_limit = std::int64_t(1) << 27;

inline std::int64_t nu_cap(double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("nu_cap: t must be >= 0");
    if (t == 0.0) return 1;
    const double log_fail = std::log1p(-std::exp(-t)); // log(1 - e^{-t}) < 0
    const double cap = std::ceil(std::log(nu_tail_mass) / log_fail);
    if (!(cap < 9e18)) return std::int64_t(9e18);
    return std::max<std::int64_t>(1, std::int64_t(cap));
}

/// One draw of nu with P(nu = n) = e^{-t} (1 - e^{-t})^{n-1}. Draws beyond
/// `cap` are counted in stats and resampled.
inline std::int64_t sample_nu(double t, SeededStream& rng, std::int64_t cap,
                              DrawStats* stats = nullptr) {
    if (!(t >= 0.0)) throw std::invalid_argument("sample_nu: t must be >= 0");
    if (t == 0.0) return 1;
    const double log_fail = std::log1p(-std::exp(-t));
    for (;;) {
        const double u = rng.uniform01(); // 1-u in (0,1]
        const std::int64_t nu = 1 + std::int64_t(std::floor(std::log1p(-u) / log_fail));
        if (nu <= cap) return nu;
        if (stats) ++stats->cap_events;
    }
}

inline std::int64_t sample_nu(double t, SeededStream& rng, DrawStats* stats = nullptr) {
    return sample_nu(t, rng, nu_cap(t), stats);
}

/// Leaf weights from an explicit split history. Step k splits the entry at
/// position picks[k-1] (1-based, in {1..k}) into the pair
/// (cos_kernel * w, sin_kernel * w), shifting later entries right.
inline std::vector<double> build_weights(const ModelParams& params,
                                         std::span<const double> thetas,
                                         std::span<const int> picks) {
    if (thetas.size() != picks.size())
        throw std::invalid_argument("build_weights: thetas and picks must have equal length");
    std::vector<double> weights{1.0};
    weights.reserve(thetas.size() + 1);
    for (std::size_t k = 0; k < picks.size(); ++k) {
        const int pick = picks[k];
        if (pick < 1 || std::size_t(pick) > k + 1)
            throw std::invalid_argument("build_weights: pick out of range {1..k}");
        const double w = weights[pick - 1];
        weights[pick - 1] = w * cos_kernel(params.p, thetas[k]);
        weights.insert(weights.begin() + pick, w * sin_kernel(params.p, thetas[k]));
    }
    return weights;
}

/// Pick sequence for the symmetric test tree: the complete binary tree of
/// depth m, plus 2k two-leaf subtrees attached at leaves
/// 1, 2^m, 2, 2^m - 1, ..., k, 2^m - (k-1).
inline std::vector<int> symmetric_tree_picks(int m, int k) {
    if (m < 1 || m > 24) throw std::invalid_argument("symmetric_tree_picks: m out of range");
    const std::int64_t half = std::int64_t(1) << (m - 1);
    if (k < 0 || k >= half) throw std::invalid_argument("symmetric_tree_picks: k out of range");

    std::vector<int> picks;
    picks.reserve((std::size_t(1) << m) - 1 + 2 * std::size_t(k));
    for (int level = 0; level < m; ++level) {
        const int leaves = 1 << level;
        for (int i = 1; i <= leaves; ++i) picks.push_back(2 * i - 1);
    }
    // Attach the extra pairs, tracking how earlier splits shift positions.
    const int full = 1 << m;
    std::vector<int> current(full);
    for (int i = 0; i < full; ++i) current[i] = i + 1;
    for (int j = 1; j <= k; ++j) {
        for (const int target : {j, full - (j - 1)}) {
            const auto it = std::find(current.begin(), current.end(), target);
            const int pos = int(it - current.begin()) + 1;
            picks.push_back(pos);
            *it = 0;
            current.insert(it, 0);
        }
    }
    return picks;
}

struct McKeanRealization {
    std::int64_t nu = 1;
    std::vector<double> thetas;
    std::vector<int> picks;
    std::vector<double> weights;
};

/// Full realization (nu, angles, picks, weights). Positional semantics;
/// O(nu^2), intended for diagnostics at moderate t.
inline McKeanRealization sample_realization(const ModelParams& params, double t,
                                            SeededStream& rng, DrawStats* stats = nullptr) {
    McKeanRealization r;
    r.nu = sample_nu(t, rng, std::min(nu_cap(t), nu_hard_limit), stats);
    r.thetas.reserve(r.nu - 1);
    r.picks.reserve(r.nu - 1);
    for (std::int64_t k = 1; k < r.nu; ++k) {
        r.thetas.push_back(rng.uniform_angle());
        r.picks.push_back(1 + int(rng.uniform_index(std::uint64_t(k))));
    }
    r.weights = build_weights(params, r.thetas, r.picks);
    return r;
}

/// Leaf-weight multiset of a fresh tree, in unspecified order. Splitting a
/// uniformly chosen leaf is equivalent in law to splitting a uniformly
/// chosen position, so the multiset matches the positional construction
/// while costing O(nu).
inline void sample_weight_multiset(const ModelParams& params, double t, SeededStream& rng,
                                   std::vector<double>& out, DrawStats* stats = nullptr) {
    const std::int64_t cap = nu_cap(t);
    if (cap > nu_hard_limit)
        throw NumericalGuard("sample_weight_multiset: nu cap at t=" + std::to_string(t) +
                             " exceeds the tree-size hard limit");
    const std::int64_t nu = sample_nu(t, rng, cap, stats);
    out.clear();
    out.reserve(nu);
    out.push_back(1.0);
    const double p = params.p;
    // hoist the kernel-exponent dispatch out of the splitting loop
    const int cls = (p == 0.0) ? 0 : (p == 1.0) ? 1 : (p == 2.0) ? 2 : (p == 3.0) ? 3 : 4;
    for (std::int64_t k = 1; k < nu; ++k) {
        const double theta = rng.uniform_angle();
        const std::uint64_t j = rng.uniform_index(std::uint64_t(k));
        double c = std::cos(theta);
        double s = std::sin(theta);
        switch (cls) {
            case 0: break;
            case 1:
                c *= std::abs(c);
                s *= std::abs(s);
                break;
            case 2:
                c = c * c * c;
                s = s * s * s;
                break;
            case 3:
                c = c * c * c * std::abs(c);
                s = s * s * s * std::abs(s);
                break;
            default:
                c *= std::pow(std::abs(c), p);
                s *= std::pow(std::abs(s), p);
                break;
        }
        const double w = out[j];
        out[j] = w * c;
        out.push_back(w * s);
    }
}

template <class L>
concept VelocityLaw = requires(const L& l, SeededStream& rng) {
    { l.sample(rng) } -> std::convertible_to<double>;
};

/// One exact draw from the solution at time t.
template <VelocityLaw L>
double sample_velocity(const ModelParams& params, const L& law, double t,
                       SeededStream& rng, DrawStats* stats = nullptr) {
    thread_local std::vector<double> buf;
    sample_weight_multiset(params, t, rng, buf, stats);
    double v = 0.0;
    for (const double w : buf) v += w * law.sample(rng);
    return v;
}

struct EnsembleResult {
    std::vector<double> values;
    DrawStats stats;
};

/// n independent draws using streams (seed, offset..offset+n-1). Output is
/// identical for a given seed regardless of worker count.
template <VelocityLaw L>
EnsembleResult sample_ensemble(const ModelParams& params, const L& law, double t,
                               std::size_t n, std::uint64_t seed,
                               std::uint64_t stream_offset = 0) {
    if (n < 1) throw std::invalid_argument("sample_ensemble: n must be >= 1");
    if (nu_cap(t) > nu_hard_limit)
        throw NumericalGuard("sample_ensemble: t=" + std::to_string(t) +
                             " requires trees beyond the hard size limit");
    EnsembleResult result;
    result.values.resize(n);
    std::atomic<std::uint64_t> cap_events{0};
    parallel_ranges(n, [&](std::size_t lo, std::size_t hi) {
        DrawStats local;
        for (std::size_t i = lo; i < hi; ++i) {
            SeededStream rng(seed, stream_offset + i);
            result.values[i] = sample_velocity(params, law, t, rng, &local);
        }
        cap_events.fetch_add(local.cap_events, std::memory_order_relaxed);
    });
    result.stats.cap_events = cap_events.load();
    return result;
}

} // namespace kac
