#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "kac/rng.hpp"
#include "kac/stable.hpp"

namespace kac {

namespace law {

/// Point masses at +-v with probability 1/2 each.
struct Rademacher {
    double v;
    explicit Rademacher(double v_) : v(v_) {
        if (!(v > 0.0)) throw std::invalid_argument("Rademacher: v must be > 0");
    }
};

struct Gaussian {
    double sigma;
    explicit Gaussian(double sigma_) : sigma(sigma_) {
        if (!(sigma > 0.0)) throw std::invalid_argument("Gaussian: sigma must be > 0");
    }
};

struct SymmetricStable {
    double alpha0;
    double a;
    SymmetricStable(double alpha0_, double a_) : alpha0(alpha0_), a(a_) {
        if (!(alpha0 > 0.0 && alpha0 <= 2.0))
            throw std::invalid_argument("SymmetricStable: alpha0 must lie in (0, 2]");
        if (!(a >= 0.0)) throw std::invalid_argument("SymmetricStable: scale a must be >= 0");
    }
};

/// Symmetric law whose tail is exactly 1 - F*(x) = (1/2) (x/x0)^(-alpha0)
/// for x >= x0. The tail formula saturates the half-mass at x0, so the
/// uniform core on [-x0, x0] carries zero mass and |X| is plain Pareto.
struct SymmetricPareto {
    double alpha0;
    double x0;
    SymmetricPareto(double alpha0_, double x0_) : alpha0(alpha0_), x0(x0_) {
        if (!(alpha0 > 0.0)) throw std::invalid_argument("SymmetricPareto: alpha0 must be > 0");
        if (!(x0 > 0.0)) throw std::invalid_argument("SymmetricPareto: x0 must be > 0");
    }
};

struct PointMass {
    double x0;
    explicit PointMass(double x0_) : x0(x0_) {
        if (!std::isfinite(x0)) throw std::invalid_argument("PointMass: x0 must be finite");
    }
};

struct Empirical {
    std::vector<double> samples;
    explicit Empirical(std::vector<double> s) : samples(std::move(s)) {
        if (samples.empty()) throw std::invalid_argument("Empirical: needs at least one sample");
        for (double x : samples)
            if (!std::isfinite(x)) throw std::invalid_argument("Empirical: non-finite sample");
    }
};

/// Characteristic function of the symmetric Pareto family, real and even.
inline double pareto_cf(double alpha0, double x0, double xi) {
    const double y = std::abs(xi) * x0;
    if (y == 0.0) return 1.0;
    if (alpha0 < 2.0) {
        const double ya = std::pow(y, alpha0);
        return 1.0 - ya * stable_scale_constant(alpha0) +
               alpha0 * ya * one_minus_cos_power_integral(alpha0, y);
    }
    // alpha0 >= 2: finite variance regime.
    const double s = 1.0 + alpha0;
    const double ya = std::pow(y, alpha0);
    if (y > 1.0) return alpha0 * ya * trig_tail_integral(s, y, /*sine=*/false);
    // phi = 1 - y^a0 + a0 y^a0 [ C(s,1) + sum_{k>=1} (-1)^k/(2k)! * I_k ],
    // I_k = int_y^1 u^(2k-s) du; the k=0 term is absorbed analytically.
    double series = trig_tail_integral(s, 1.0, /*sine=*/false);
    double fact = 1.0;
    for (int k = 1; k < 24; ++k) {
        fact *= (2.0 * k - 1.0) * (2.0 * k);
        const double e = 2.0 * k + 1.0 - s;
        const double ik = (std::abs(e) < 1e-12) ? std::log(1.0 / y)
                                                : (1.0 - std::pow(y, e)) / e;
        const double term = ((k % 2) ? -1.0 : 1.0) / fact * ik;
        series += term;
        if (std::abs(term) < 1e-18) break;
    }
    return 1.0 - ya + alpha0 * ya * series;
}

} // namespace law

enum class TailClass {
    finite,    // x^alpha tail limit exists (possibly 0)
    divergent, // x^alpha (1 - F*) grows without bound
    estimate,  // no analytic tail; estimate from data
};

struct TailConstant {
    TailClass kind = TailClass::finite;
    double c0 = 0.0;
};

/// An initial velocity distribution: exact characteristic function, exact
/// sampler, and (where the family admits one) the symmetrized tail.
class InitialLaw {
public:
    using Variant = std::variant<law::Rademacher, law::Gaussian, law::SymmetricStable,
                                 law::SymmetricPareto, law::PointMass, law::Empirical>;

    explicit InitialLaw(Variant v) : v_(std::move(v)) {}

    static InitialLaw rademacher(double v) { return InitialLaw(law::Rademacher(v)); }
    static InitialLaw gaussian(double sigma) { return InitialLaw(law::Gaussian(sigma)); }
    static InitialLaw symmetric_stable(double alpha0, double a) {
        return InitialLaw(law::SymmetricStable(alpha0, a));
    }
    static InitialLaw symmetric_pareto(double alpha0, double x0) {
        return InitialLaw(law::SymmetricPareto(alpha0, x0));
    }
    static InitialLaw point_mass(double x0) { return InitialLaw(law::PointMass(x0)); }
    static InitialLaw empirical(std::vector<double> samples) {
        return InitialLaw(law::Empirical(std::move(samples)));
    }

    const Variant& variant() const { return v_; }

    std::complex<double> cf(double xi) const {
        return std::visit([xi](const auto& l) { return cf_of(l, xi); }, v_);
    }

    double sample(SeededStream& rng) const {
        return std::visit([&rng](const auto& l) { return sample_of(l, rng); }, v_);
    }

    bool is_symmetric() const {
        return std::visit([](const auto& l) { return symmetric_of(l); }, v_);
    }

    /// 1 - F0*(x) of the symmetrized law, x > 0. Equals P(|X| > x) / 2.
    double symmetrized_tail(double x) const {
        if (!(x > 0.0)) throw std::invalid_argument("symmetrized_tail: x must be > 0");
        return std::visit([x](const auto& l) { return tail_of(l, x); }, v_);
    }

    /// Second moment (= variance of the symmetrized law); nullopt if infinite.
    std::optional<double> variance() const {
        return std::visit([](const auto& l) { return variance_of(l); }, v_);
    }

    /// Behaviour of x^alpha (1 - F0*(x)) as x -> infinity.
    TailConstant tail_constant(double alpha) const {
        return std::visit([alpha](const auto& l) { return tail_constant_of(l, alpha); }, v_);
    }

    const char* family() const {
        return std::visit([](const auto& l) { return family_of(l); }, v_);
    }

private:
    static std::complex<double> cf_of(const law::Rademacher& l, double xi) {
        return {std::cos(l.v * xi), 0.0};
    }
    static std::complex<double> cf_of(const law::Gaussian& l, double xi) {
        return {std::exp(-0.5 * l.sigma * l.sigma * xi * xi), 0.0};
    }
    static std::complex<double> cf_of(const law::SymmetricStable& l, double xi) {
        return {stable_cf(StableSpec(l.alpha0, l.a), xi), 0.0};
    }
    static std::complex<double> cf_of(const law::SymmetricPareto& l, double xi) {
        return {law::pareto_cf(l.alpha0, l.x0, xi), 0.0};
    }
    static std::complex<double> cf_of(const law::PointMass& l, double xi) {
        return {std::cos(l.x0 * xi), std::sin(l.x0 * xi)};
    }
    static std::complex<double> cf_of(const law::Empirical& l, double xi) {
        double re = 0.0, im = 0.0;
        for (double x : l.samples) {
            re += std::cos(xi * x);
            im += std::sin(xi * x);
        }
        const double n = double(l.samples.size());
        return {re / n, im / n};
    }

    static double sample_of(const law::Rademacher& l, SeededStream& rng) {
        return rng.uniform01() < 0.5 ? -l.v : l.v;
    }
    static double sample_of(const law::Gaussian& l, SeededStream& rng) {
        return l.sigma * rng.standard_normal();
    }
    static double sample_of(const law::SymmetricStable& l, SeededStream& rng) {
        return stable_draw(StableSpec(l.alpha0, l.a), rng);
    }
    static double sample_of(const law::SymmetricPareto& l, SeededStream& rng) {
        const double mag = l.x0 * std::pow(rng.uniform01_open_below(), -1.0 / l.alpha0);
        return rng.uniform01() < 0.5 ? -mag : mag;
    }
    static double sample_of(const law::PointMass& l, SeededStream&) { return l.x0; }
    static double sample_of(const law::Empirical& l, SeededStream& rng) {
        return l.samples[rng.uniform_index(l.samples.size())];
    }

    static bool symmetric_of(const law::Rademacher&) { return true; }
    static bool symmetric_of(const law::Gaussian&) { return true; }
    static bool symmetric_of(const law::SymmetricStable&) { return true; }
    static bool symmetric_of(const law::SymmetricPareto&) { return true; }
    static bool symmetric_of(const law::PointMass& l) { return l.x0 == 0.0; }
    static bool symmetric_of(const law::Empirical&) { return false; }

    static double tail_of(const law::Rademacher& l, double x) {
        return x < l.v ? 0.5 : 0.0;
    }
    static double tail_of(const law::Gaussian& l, double x) {
        return 0.5 * std::erfc(x / (l.sigma * std::numbers::sqrt2));
    }
    static double tail_of(const law::SymmetricStable& l, double x) {
        if (l.a == 0.0) return 0.0;
        if (l.alpha0 == 2.0)
            return 0.5 * std::erfc(x / (2.0 * std::sqrt(l.a)));
        // leading-order stable tail; exact CDFs are deliberately not implemented
        return 0.5 * l.a / stable_scale_constant(l.alpha0) * std::pow(x, -l.alpha0);
    }
    static double tail_of(const law::SymmetricPareto& l, double x) {
        return x < l.x0 ? 0.5 : 0.5 * std::pow(x / l.x0, -l.alpha0);
    }
    static double tail_of(const law::PointMass& l, double x) {
        return (l.x0 != 0.0 && x < std::abs(l.x0)) ? 0.5 : 0.0;
    }
    static double tail_of(const law::Empirical& l, double x) {
        std::size_t count = 0;
        for (double s : l.samples)
            if (std::abs(s) > x) ++count;
        return 0.5 * double(count) / double(l.samples.size());
    }

    static std::optional<double> variance_of(const law::Rademacher& l) { return l.v * l.v; }
    static std::optional<double> variance_of(const law::Gaussian& l) { return l.sigma * l.sigma; }
    static std::optional<double> variance_of(const law::SymmetricStable& l) {
        if (l.a == 0.0) return 0.0;
        if (l.alpha0 == 2.0) return 2.0 * l.a;
        return std::nullopt;
    }
    static std::optional<double> variance_of(const law::SymmetricPareto& l) {
        if (l.alpha0 > 2.0) return l.alpha0 * l.x0 * l.x0 / (l.alpha0 - 2.0);
        return std::nullopt;
    }
    static std::optional<double> variance_of(const law::PointMass& l) { return l.x0 * l.x0; }
    static std::optional<double> variance_of(const law::Empirical& l) {
        double acc = 0.0;
        for (double x : l.samples) acc += x * x;
        return acc / double(l.samples.size());
    }

    static TailConstant match_power_tail(double alpha, double alpha0, double c0_at_match) {
        constexpr double tol = 1e-9;
        if (alpha < alpha0 - tol) return {TailClass::finite, 0.0};
        if (alpha <= alpha0 + tol) return {TailClass::finite, c0_at_match};
        return {TailClass::divergent, 0.0};
    }

    static TailConstant tail_constant_of(const law::Rademacher&, double) {
        return {TailClass::finite, 0.0};
    }
    static TailConstant tail_constant_of(const law::Gaussian&, double) {
        return {TailClass::finite, 0.0};
    }
    static TailConstant tail_constant_of(const law::SymmetricStable& l, double alpha) {
        if (l.a == 0.0 || l.alpha0 == 2.0) return {TailClass::finite, 0.0};
        return match_power_tail(alpha, l.alpha0, 0.5 * l.a / stable_scale_constant(l.alpha0));
    }
    static TailConstant tail_constant_of(const law::SymmetricPareto& l, double alpha) {
        return match_power_tail(alpha, l.alpha0, 0.5 * std::pow(l.x0, l.alpha0));
    }
    static TailConstant tail_constant_of(const law::PointMass&, double) {
        return {TailClass::finite, 0.0};
    }
    static TailConstant tail_constant_of(const law::Empirical&, double) {
        return {TailClass::estimate, 0.0};
    }

    static const char* family_of(const law::Rademacher&) { return "rademacher"; }
    static const char* family_of(const law::Gaussian&) { return "gaussian"; }
    static const char* family_of(const law::SymmetricStable&) { return "symmetric-stable"; }
    static const char* family_of(const law::SymmetricPareto&) { return "symmetric-pareto"; }
    static const char* family_of(const law::PointMass&) { return "point-mass"; }
    static const char* family_of(const law::Empirical&) { return "empirical"; }

    Variant v_;
};

/// The symmetrization of an initial law: cf = Re cf0, tail from Eq.-style
/// half-sum, sampler = |X| with an independent random sign.
class SymmetrizedLaw {
public:
    explicit SymmetrizedLaw(InitialLaw base) : base_(std::move(base)) {}

    const InitialLaw& base() const { return base_; }

    double cf_real(double xi) const { return base_.cf(xi).real(); }
    std::complex<double> cf(double xi) const { return {cf_real(xi), 0.0}; }

    double sample(SeededStream& rng) const {
        const double mag = std::abs(base_.sample(rng));
        return rng.uniform01() < 0.5 ? -mag : mag;
    }

    double tail(double x) const { return base_.symmetrized_tail(x); }

    /// F0*(x) at continuity points.
    double cdf(double x) const {
        if (x > 0.0) return 1.0 - tail(x);
        if (x < 0.0) return tail(-x);
        return 0.5;
    }

    std::optional<double> variance() const { return base_.variance(); }
    TailConstant tail_constant(double alpha) const { return base_.tail_constant(alpha); }

private:
    InitialLaw base_;
};

inline SymmetrizedLaw symmetrize(const InitialLaw& law) { return SymmetrizedLaw(law); }
inline SymmetrizedLaw symmetrize(const SymmetrizedLaw& law) { return law; }

} // namespace kac
