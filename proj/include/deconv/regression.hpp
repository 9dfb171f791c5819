#pragma once

#include <span>

#include "deconv/density.hpp"
#include "deconv/deconv_kernel.hpp"
#include "deconv/estimates.hpp"
#include "deconv/kernels.hpp"

namespace deconv {

struct RegressionConfig {
    int degree = 0;       // p
    KernelSpec kernel;
    double h = 0.0;
    double ridge = 1e-10;  // relative jitter for near-singular local systems
    int n_quad = kDefaultQuadNodes;
};

/// Nadaraya-Watson / local constant estimator (the p = 0 local least-squares
/// fit). Grid points with an empty neighborhood are flagged, not fatal.
CurveEstimate local_constant(std::span<const double> x, std::span<const double> y,
                             const RegressionConfig& cfg, std::span<const double> grid);

/// Local polynomial estimator of any degree via kernel-weighted least squares;
/// returns the fitted intercept at each grid point.
CurveEstimate local_polynomial(std::span<const double> x, std::span<const double> y,
                               const RegressionConfig& cfg, std::span<const double> grid);

/// Errors-in-variables local polynomial (p = 0 or 1): the error-free weight
/// ((x-X_i)/h)^r K(...) is replaced by K_{U,r}((x-W_i)/h) throughout.
CurveEstimate deconv_local_polynomial(const ContaminatedSample& sample, const RegressionConfig& cfg,
                                      const ErrorModel& error, std::span<const double> grid,
                                      EvalPath path = EvalPath::Auto);

namespace detail {

/// Local-linear ratio (S2 T0 - S1 T1) / (S0 S2 - S1^2) with relative ridge on
/// the denominator; shared by the error-free closed form and the deconvolution
/// path. ok reports whether the regularized denominator was usable.
double local_linear_from_moments(double s0, double s1, double s2, double t0, double t1,
                                 double ridge, bool* ok);

/// Weighted polynomial fit at one point: basis ((x_i - x0)/h)^j, given
/// arbitrary nonnegative weights. Returns the intercept. Exposed so tests can
/// scale the weights and check normalization invariance.
double weighted_polyfit(std::span<const double> x, std::span<const double> y,
                        std::span<const double> weights, double x0, double h, int degree,
                        double ridge, bool* ok);

/// Error-free local linear via the explicit S_r/T_r closed form.
double local_linear_closed_form(std::span<const double> x, std::span<const double> y,
                                const KernelSpec& kernel, double h, double x0, double ridge,
                                int n_quad, bool* ok);

}  // namespace detail

}  // namespace deconv
