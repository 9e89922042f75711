#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "kac/model.hpp"

namespace kac {

/// A characteristic function sampled on the uniform grid 0 = xi_0 < ... <
/// xi_{N-1} = xi_max. Negative frequencies are implied by hermitian symmetry.
class CfGrid {
public:
    CfGrid(double xi_max, std::size_t n)
        : xi_max_(xi_max), values_(n, {0.0, 0.0}) {
        if (!(xi_max > 0.0)) throw std::invalid_argument("CfGrid: xi_max must be > 0");
        if (n < 9) throw std::invalid_argument("CfGrid: need at least 9 nodes");
    }

    template <class F>
    static CfGrid tabulate(double xi_max, std::size_t n, F&& f) {
        CfGrid g(xi_max, n);
        for (std::size_t i = 0; i < n; ++i) g.values_[i] = std::complex<double>(f(g.node(i)));
        return g;
    }

    std::size_t size() const { return values_.size(); }
    double xi_max() const { return xi_max_; }
    double step() const { return xi_max_ / double(values_.size() - 1); }
    double node(std::size_t i) const { return xi_max_ * double(i) / double(values_.size() - 1); }

    std::complex<double>& operator[](std::size_t i) { return values_[i]; }
    const std::complex<double>& operator[](std::size_t i) const { return values_[i]; }
    const std::vector<std::complex<double>>& values() const { return values_; }
    std::vector<std::complex<double>>& values() { return values_; }

    bool same_grid(const CfGrid& other) const {
        return size() == other.size() && xi_max_ == other.xi_max_;
    }

    bool all_real() const {
        for (const auto& v : values_)
            if (v.imag() != 0.0) return false;
        return true;
    }

    double max_imag() const {
        double m = 0.0;
        for (const auto& v : values_) m = std::max(m, std::abs(v.imag()));
        return m;
    }

    double max_modulus() const {
        double m = 0.0;
        for (const auto& v : values_) m = std::max(m, std::abs(v));
        return m;
    }

    CfGrid real_part() const {
        CfGrid g(xi_max_, size());
        for (std::size_t i = 0; i < size(); ++i) g[i] = {values_[i].real(), 0.0};
        return g;
    }

private:
    double xi_max_;
    std::vector<std::complex<double>> values_;
};

/// Off-node evaluation by sliding 4-point cubic interpolation, hermitian for
/// negative arguments. The real part is interpolated against w = xi^alpha:
/// symmetric CFs in the stable basin behave like 1 - a*xi^alpha near 0, so
/// the warped abscissa removes the cusp that defeats plain cubics there.
/// The imaginary part (odd, smooth in xi) is interpolated in xi directly.
class GridEvaluator {
public:
    GridEvaluator(const CfGrid& g, double alpha)
        : g_(&g), alpha_(alpha), all_real_(g.all_real()) {
        if (!(alpha > 0.0 && alpha <= 2.0))
            throw std::invalid_argument("GridEvaluator: alpha must lie in (0, 2]");
        warped_.resize(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) warped_[i] = warp(g.node(i));
    }

    std::complex<double> operator()(double xi) const {
        const double u = std::abs(xi);
        const double re = eval_real(u);
        if (all_real_) return {re, 0.0};
        const double im = eval_imag(u);
        return {re, xi < 0.0 ? -im : im};
    }

private:
    double warp(double u) const {
        if (alpha_ == 1.0) return u;
        if (alpha_ == 2.0) return u * u;
        return std::pow(u, alpha_);
    }

    std::size_t stencil_origin(double u) const {
        const double h = g_->step();
        const std::size_t n = g_->size();
        std::size_t cell = std::min<std::size_t>(n - 2, std::size_t(u / h));
        return std::min(n - 4, cell > 0 ? cell - 1 : 0);
    }

    static double lagrange4(const double x[4], const double y[4], double t) {
        double acc = 0.0;
        for (int i = 0; i < 4; ++i) {
            double term = y[i];
            for (int j = 0; j < 4; ++j) {
                if (j == i) continue;
                term *= (t - x[j]) / (x[i] - x[j]);
            }
            acc += term;
        }
        return acc;
    }

    double eval_real(double u) const {
        if (u == 0.0) return (*g_)[0].real();
        if (u >= g_->xi_max()) return (*g_)[g_->size() - 1].real();
        const std::size_t j = stencil_origin(u);
        const double x[4] = {warped_[j], warped_[j + 1], warped_[j + 2], warped_[j + 3]};
        const double y[4] = {(*g_)[j].real(), (*g_)[j + 1].real(), (*g_)[j + 2].real(),
                             (*g_)[j + 3].real()};
        return lagrange4(x, y, warp(u));
    }

    double eval_imag(double u) const {
        if (u == 0.0) return (*g_)[0].imag();
        if (u >= g_->xi_max()) return (*g_)[g_->size() - 1].imag();
        const std::size_t j = stencil_origin(u);
        const double h = g_->step();
        const double x[4] = {g_->node(j), g_->node(j) + h, g_->node(j) + 2 * h,
                             g_->node(j) + 3 * h};
        const double y[4] = {(*g_)[j].imag(), (*g_)[j + 1].imag(), (*g_)[j + 2].imag(),
                             (*g_)[j + 3].imag()};
        return lagrange4(x, y, u);
    }

    const CfGrid* g_;
    double alpha_;
    bool all_real_;
    std::vector<double> warped_;
};

} // namespace kac
