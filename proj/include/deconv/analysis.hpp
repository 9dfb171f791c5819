#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "deconv/density.hpp"
#include "deconv/error_models.hpp"
#include "deconv/estimates.hpp"
#include "deconv/kernels.hpp"
#include "deconv/truth.hpp"

namespace deconv {

/// Leading bias term (h^2/2) kappa f''(x) of a second-order kernel estimator.
double theoretical_bias(const TrueDensity& truth, const KernelSpec& kernel, double h, double x);

/// Leading variance term f_W(x)/(2 pi n h) * Int phi_K^2 |phi_U(t/h)|^{-2} dt.
double theoretical_variance(double f_w_at_x, const KernelSpec& kernel, const ErrorModel& error,
                            double h, std::size_t n, int n_quad = kDefaultQuadNodes);

/// bias^2 + variance per bandwidth, with f_W obtained by convolution quadrature.
std::vector<double> theoretical_mse_profile(const TrueDensity& truth, const KernelSpec& kernel,
                                            const ErrorModel& error, std::size_t n,
                                            std::span<const double> h_grid, double x);

/// Density of W = X + U at x, by quadrature against the error density.
double convolved_density(const TrueDensity& truth, const ErrorModel& error, double x);

/// Integrated squared error of a curve against the exact truth on its grid.
double empirical_ise(const CurveEstimate& est, const TrueDensity& truth);
/// Same against a reference curve; the grids must match exactly.
double empirical_ise(const CurveEstimate& est, const CurveEstimate& reference);

/// Integrated squared bias proxy (1/2pi) Int |phi_X(t)|^2 (phi_K(ht)-1)^2 dt.
/// Underflows to exactly 0 when the sinc proxy drops below double range.
double bias_proxy_spectral(const TrueDensity& truth, const KernelSpec& kernel, double h);

enum class EstimatorKind { Kde, DeconvKde };

struct OracleSearch {
    double h = 0.0;
    double ise = 0.0;
    std::size_t index = 0;
    bool interior = false;
};

/// Bandwidth minimizing the empirical ISE over h_grid, ties broken toward the
/// larger (smoother) h. Kde uses the latent x_true when present (error-free
/// protocol), otherwise w.
OracleSearch oracle_bandwidth(const ContaminatedSample& sample, const TrueDensity& truth,
                              EstimatorKind kind, const KernelSpec& kernel,
                              const ErrorModel& error, std::span<const double> h_grid,
                              std::span<const double> eval_grid, int n_quad = kDefaultQuadNodes);

/// 25-point geometric default h grid scaled to the sample spread of w.
std::vector<double> default_h_grid(const ContaminatedSample& sample, std::size_t count = 25);

std::vector<double> log_spaced(double lo, double hi, std::size_t count);

struct RateExperiment {
    TrueDensity truth = TrueDensity::gaussian(0.0, 1.0);
    ErrorModel error;
    KernelSpec kernel;
    EstimatorKind kind = EstimatorKind::DeconvKde;
    std::vector<std::size_t> sizes;
    int replicates = 20;
    std::uint64_t seed = 1;
    std::vector<double> h_grid;          // empty: default log grid per sample
    std::size_t ise_grid_points = 301;
    int n_quad = kDefaultQuadNodes;
    int threads = 1;
};

struct RatePoint {
    std::size_t n = 0;
    double median_ise = 0.0, q25 = 0.0, q75 = 0.0;
};

struct RateResult {
    std::vector<RatePoint> table;
    std::vector<std::vector<double>> raw_ise;  // per size, per replicate
    double slope = 0.0, intercept = 0.0;
};

RateResult run_rate_experiment(const RateExperiment& exp);

struct SlopeFit {
    double slope = 0.0, intercept = 0.0;
};
SlopeFit fit_loglog_slope(std::span<const std::size_t> sizes, std::span<const double> medians);

/// Percentile bootstrap CI for the rate slope, resampling replicates within
/// each sample size.
std::pair<double, double> bootstrap_slope_ci(const RateResult& result,
                                             std::span<const std::size_t> sizes, int resamples,
                                             std::uint64_t seed);

namespace detail {
double quantile_sorted(std::span<const double> sorted, double p);
}

}  // namespace deconv
