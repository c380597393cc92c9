#pragma once

#include <memory>
#include <string>
#include <vector>

namespace primeangles {

// The smooth cutoff pair (f, Phi): f even, C_c^inf, support in [-1,1];
// Phi in C_c^inf(0,inf) with support in [1/4, 1].  fhat is the Fourier
// transform fhat(y) = int f(x) e^{-2 pi i x y} dx, tabulated on a uniform
// grid with cubic interpolation (absolute error budget 1e-12) and treated
// as zero beyond the point where |fhat| stays below 1e-14 * fhat(0).
class WindowPair {
public:
    // f(x) = exp(-1/(1-x^2)) on (-1,1); Phi(t) = exp(-1/((t-1/4)(1-t))) on (1/4,1).
    static const WindowPair& standard();
    // scaled variant, exposed to probe that predictions depend on (f,Phi)
    // only through c1/c2: f(x) = exp(-2/(1-x^2)), Phi(t) = exp(-1/2/((t-1/4)(1-t))).
    static const WindowPair& alternative();

    double f(double x) const;
    double phi(double t) const;
    double fhat(double y) const;

    // autocorrelation C_f(s) = int f(x+s) f(x) dx, support [-2,2]
    double autocorr(double s) const;

    double int_f() const { return int_f_; }
    double int_f2() const { return int_f2_; }
    double int_phi() const { return int_phi_; }
    double int_phi2() const { return int_phi2_; }
    double c1() const { return int_f_ * int_phi_; }
    double c2() const { return int_f2_ * int_phi2_; }

    // smallest y beyond which |fhat| stays under 1e-14 * fhat(0)
    double fhat_cutoff() const { return fhat_cut_; }

    // default spectral truncation: ceil(cutoff * K), capped at 200 K
    long kmax(std::uint64_t K) const;

    const std::string& name() const { return name_; }

private:
    WindowPair(std::string name, double f_sharp, double phi_sharp);

    double f_sharp_ = 1.0;   // f(x) = exp(-f_sharp/(1-x^2))
    double phi_sharp_ = 1.0; // Phi(t) = exp(-phi_sharp/((t-1/4)(1-t)))
    std::string name_;

    double int_f_ = 0, int_f2_ = 0, int_phi_ = 0, int_phi2_ = 0;
    double fhat_cut_ = 0;

    double fhat_step_ = 0;
    std::vector<double> fhat_tab_;
    double corr_step_ = 0;
    std::vector<double> corr_tab_;
};

} // namespace primeangles
