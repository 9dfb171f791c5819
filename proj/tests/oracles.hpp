#pragma once

// Independent oracles used across the test suite. These deliberately avoid
// the library's evaluation paths: different quadrature construction, complex
// arithmetic instead of parity-reduced forms, direct O(n^2) summation.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

namespace oracles {

inline constexpr double kPi = std::numbers::pi;

/// Central finite difference of given order (1 or 2).
inline double finite_diff(const std::function<double(double)>& f, double t, int order,
                          double eps = 1e-5) {
    if (order == 1) return (f(t + eps) - f(t - eps)) / (2.0 * eps);
    return (f(t + eps) - 2.0 * f(t) + f(t - eps)) / (eps * eps);
}

/// Composite Simpson with its own node bookkeeping (test-side rule).
inline double simpson(const std::function<double(double)>& f, double a, double b, int nodes) {
    if (nodes % 2 == 0) ++nodes;
    const double dt = (b - a) / (nodes - 1);
    double acc = f(a) + f(b);
    for (int q = 1; q < nodes - 1; ++q) acc += (q % 2 == 1 ? 4.0 : 2.0) * f(a + q * dt);
    return acc * dt / 3.0;
}

/// Brute-force complex quadrature of
/// (1/(2 pi i^r)) Int e^{-itx} phi^{(r)}(t)/phi_U(t/h) dt over [-T, T].
inline std::complex<double> complex_deconv_kernel(const std::function<double(double)>& phi_deriv_r,
                                                  const std::function<double(double)>& phi_u,
                                                  double support, double h, int r, double x,
                                                  int nodes = 6145) {
    if (nodes % 2 == 0) ++nodes;
    const double dt = 2.0 * support / (nodes - 1);
    std::complex<double> acc{0.0, 0.0};
    for (int q = 0; q < nodes; ++q) {
        const double t = -support + q * dt;
        const double w = (q == 0 || q == nodes - 1) ? 1.0 : (q % 2 == 1 ? 4.0 : 2.0);
        acc += w * std::exp(std::complex<double>(0.0, -t * x)) * phi_deriv_r(t) / phi_u(t / h);
    }
    acc *= dt / 3.0;
    const std::complex<double> i_pow_r = std::pow(std::complex<double>(0.0, 1.0), r);
    return acc / (2.0 * kPi * i_pow_r);
}

/// Closed form of the sinc-kernel deconvolution kernel under Laplace(b) error
/// with phi_L supported on [-pi, pi]:
///   L_U(x) = (1/pi)[ (1+B pi^2) sin(pi x)/x + 2 pi B cos(pi x)/x^2
///                    - 2 B sin(pi x)/x^3 ],  B = (b/h)^2,
/// obtained by integrating (1/pi) Int_0^pi cos(tx)(1 + B t^2) dt by parts.
inline double lu_laplace_closed(double x, double b, double h) {
    const double B = (b / h) * (b / h);
    if (x == 0.0) return 1.0 + B * kPi * kPi / 3.0;
    const double sp = std::sin(kPi * x), cp = std::cos(kPi * x);
    return ((1.0 + B * kPi * kPi) * sp / x + 2.0 * kPi * B * cp / (x * x) -
            2.0 * B * sp / (x * x * x)) /
           kPi;
}

inline double mean(std::span<const double> v) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc / static_cast<double>(v.size());
}

inline double variance(std::span<const double> v) {
    const double m = mean(v);
    double acc = 0.0;
    for (double x : v) acc += (x - m) * (x - m);
    return acc / static_cast<double>(v.size() - 1);
}

inline double correlation(std::span<const double> a, std::span<const double> b) {
    const double ma = mean(a), mb = mean(b);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

/// Standard normal density.
inline double phi_std(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi); }

/// Gaussian(0,1) convolved with Laplace(b), via erfc (test-side closed form).
inline double gauss_laplace_density(double w, double b) {
    const double s = 1.0;
    return (1.0 / (4.0 * b)) * std::exp(s * s / (2.0 * b * b)) *
           (std::exp(-w / b) * std::erfc((s / b - w / s) / std::sqrt(2.0)) +
            std::exp(w / b) * std::erfc((s / b + w / s) / std::sqrt(2.0)));
}

}  // namespace oracles
