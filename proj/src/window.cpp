#include "primeangles/window.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace primeangles {

namespace {

double bump(double x, double sharp) {
    const double s = 1.0 - x * x;
    return s > 0 ? std::exp(-sharp / s) : 0.0;
}

double radial_bump(double t, double sharp) {
    const double s = (t - 0.25) * (1.0 - t);
    return s > 0 ? std::exp(-sharp / s) : 0.0;
}

// midpoint rule; integrands are C_c^inf so this converges superalgebraically
template <class F>
double integrate(F&& fn, double a, double b, int n) {
    const double h = (b - a) / n;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += fn(a + (i + 0.5) * h);
    return acc * h;
}

} // namespace

WindowPair::WindowPair(std::string name, double f_sharp, double phi_sharp)
    : f_sharp_(f_sharp), phi_sharp_(phi_sharp), name_(std::move(name)) {
    const int n = 1 << 16;
    int_f_ = integrate([&](double x) { return bump(x, f_sharp_); }, -1.0, 1.0, n);
    int_f2_ = integrate([&](double x) { double v = bump(x, f_sharp_); return v * v; }, -1.0, 1.0, n);
    int_phi_ = integrate([&](double t) { return radial_bump(t, phi_sharp_); }, 0.25, 1.0, n);
    int_phi2_ = integrate([&](double t) { double v = radial_bump(t, phi_sharp_); return v * v; },
                          0.25, 1.0, n);

    // fhat on a uniform grid; per grid point a midpoint sum with a rotating
    // phase (one sincos per y, complex multiply per node)
    const int nx = 1024;
    const double hx = 2.0 / nx;
    std::vector<double> fx(nx);
    for (int m = 0; m < nx; ++m) fx[m] = bump(-1.0 + (m + 0.5) * hx, f_sharp_);

    fhat_step_ = 1.0 / 2048.0;
    const double f0 = int_f_;
    const double floor_abs = 1e-14 * f0;
    const double y_hard_max = 256.0;
    std::size_t quiet = 0;
    for (std::size_t j = 0;; ++j) {
        const double y = j * fhat_step_;
        const double phase0 = 2.0 * std::numbers::pi * (-1.0 + 0.5 * hx) * y;
        const double dphase = 2.0 * std::numbers::pi * hx * y;
        std::complex<double> rot(std::cos(phase0), -std::sin(phase0));
        const std::complex<double> step(std::cos(dphase), -std::sin(dphase));
        double acc = 0.0;
        for (int m = 0; m < nx; ++m) {
            acc += fx[m] * rot.real();
            rot *= step;
        }
        fhat_tab_.push_back(acc * hx);
        quiet = std::abs(acc * hx) < floor_abs ? quiet + 1 : 0;
        if (quiet > 512 || y > y_hard_max) break;
    }
    // cutoff: last grid point with |fhat| >= 1e-14 * fhat(0)
    std::size_t last = 0;
    for (std::size_t j = 0; j < fhat_tab_.size(); ++j)
        if (std::abs(fhat_tab_[j]) >= floor_abs) last = j;
    fhat_cut_ = (last + 1) * fhat_step_;

    corr_step_ = 1.0 / 2048.0;
    const auto ncorr = static_cast<std::size_t>(2.0 / corr_step_) + 2;
    corr_tab_.resize(ncorr);
    for (std::size_t j = 0; j < ncorr; ++j) {
        const double s = j * corr_step_;
        corr_tab_[j] = integrate(
            [&](double x) { return bump(x, f_sharp_) * bump(x + s, f_sharp_); }, -1.0, 1.0, 4096);
    }
}

const WindowPair& WindowPair::standard() {
    static const WindowPair w("std", 1.0, 1.0);
    return w;
}

const WindowPair& WindowPair::alternative() {
    static const WindowPair w("alt", 2.0, 0.5);
    return w;
}

double WindowPair::f(double x) const { return bump(x, f_sharp_); }
double WindowPair::phi(double t) const { return radial_bump(t, phi_sharp_); }

namespace {

// 4-point Lagrange interpolation on a uniform table, clamped at the ends
double interp4(const std::vector<double>& tab, double step, double t) {
    const double u = t / step;
    auto i = static_cast<std::ptrdiff_t>(u);
    std::ptrdiff_t lo = i - 1;
    if (lo < 0) lo = 0;
    if (lo + 3 >= static_cast<std::ptrdiff_t>(tab.size()))
        lo = static_cast<std::ptrdiff_t>(tab.size()) - 4;
    const double s = u - lo;
    const double w0 = -(s - 1) * (s - 2) * (s - 3) / 6.0;
    const double w1 = s * (s - 2) * (s - 3) / 2.0;
    const double w2 = -s * (s - 1) * (s - 3) / 2.0;
    const double w3 = s * (s - 1) * (s - 2) / 6.0;
    return w0 * tab[lo] + w1 * tab[lo + 1] + w2 * tab[lo + 2] + w3 * tab[lo + 3];
}

} // namespace

double WindowPair::fhat(double y) const {
    y = std::abs(y);
    if (y >= fhat_cut_) return 0.0;
    return interp4(fhat_tab_, fhat_step_, y);
}

double WindowPair::autocorr(double s) const {
    s = std::abs(s);
    if (s >= 2.0) return 0.0;
    return interp4(corr_tab_, corr_step_, s);
}

long WindowPair::kmax(std::uint64_t K) const {
    if (K < 1) throw std::invalid_argument("kmax: K must be >= 1");
    const double raw = std::ceil(fhat_cut_ * static_cast<double>(K));
    const double cap = 200.0 * static_cast<double>(K);
    return static_cast<long>(std::min(raw, cap));
}

} // namespace primeangles
