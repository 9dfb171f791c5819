#pragma once

#include <span>
#include <string>
#include <vector>

#include "deconv/density.hpp"
#include "deconv/deconv_kernel.hpp"
#include "deconv/error_models.hpp"
#include "deconv/estimates.hpp"

namespace deconv {

/// Tuning pair (k0, ell) of the minimum-contrast density estimator. The
/// bandwidth is always the derived coupling h = 1/ell; it is never stored or
/// set independently.
struct PceConfig {
    int k0 = 255;  // 2^8 - 1
    double ell = 1.0;

    double h() const { return 1.0 / ell; }
    void validate() const;

    static PceConfig from_bandwidth(double h, int k0 = 255);
};

/// Minimum-contrast estimate: coefficients a_hat[k], k = -k0..k0 (stored at
/// index k + k0), plus the assembled curve f~(x) = sum_k a_hat_k L_kl(x).
struct PceEstimate {
    std::vector<double> a_hat;
    PceConfig config;
    CurveEstimate curve;
    std::vector<std::string> warnings;

    double coefficient(int k) const;
    /// f~ at the grid point x = k/ell, using exact integer sinc arguments:
    /// exactly 0 for |k| > k0.
    double value_at_grid_index(int k) const;
};

/// Single coefficient a_hat_{k ell}; |k| <= k0 required.
double a_hat(const ContaminatedSample& sample, const ErrorModel& error, const PceConfig& cfg,
             int k, int n_quad = kDefaultQuadNodes);

PceEstimate pce_estimate(const ContaminatedSample& sample, const ErrorModel& error,
                         const PceConfig& cfg, std::span<const double> grid,
                         int n_quad = kDefaultQuadNodes);

struct TheoremReport {
    double max_inside_diff = 0.0;  // max |f~(k/ell) - f_decon(k/ell)|, |k| <= k0
    double max_outside_abs = 0.0;  // max |f~(k/ell)|, |k| > k0
    int n_inside = 0;
    int n_outside = 0;
    bool pass = false;
    double tolerance = 1e-8;
};

/// Grid-equality check of the minimum-contrast estimator against the
/// sinc-kernel deconvolution estimator at x = k/ell for the probed k. Both
/// sides share one quadrature rule but follow their own summation routes.
TheoremReport verify_theorem(const ContaminatedSample& sample, const ErrorModel& error,
                             const PceConfig& cfg, std::span<const int> probe_ks,
                             int n_quad = kDefaultQuadNodes);

}  // namespace deconv
