#pragma once

#include <span>

#include "deconv/deconv_kernel.hpp"
#include "deconv/estimates.hpp"
#include "deconv/kernels.hpp"

namespace deconv {

/// Evaluation strategy for the estimator sums. Direct evaluates one quadrature
/// per (grid point, observation) pair; Spectral folds the data into empirical
/// cosine/sine moments at the quadrature nodes first (an exact rearrangement
/// of the same finite sums, not a binning approximation). Auto picks Spectral
/// for large n*grid products.
enum class EvalPath { Auto, Direct, Spectral };

/// Error-free kernel density estimator on the given grid.
CurveEstimate kde(std::span<const double> x_data, const KernelSpec& kernel, double h,
                  std::span<const double> grid, int n_quad = kDefaultQuadNodes,
                  EvalPath path = EvalPath::Auto);

/// Deconvolution density estimator from contaminated observations, using the
/// plan's K_U (the plan must have r = 0).
CurveEstimate deconv_kde(const ContaminatedSample& sample, const DeconvKernelPlan& plan,
                         std::span<const double> grid, EvalPath path = EvalPath::Auto);

/// Trapezoid integral of a curve over its own grid.
double integrate_estimate(const CurveEstimate& est);

/// Opt-in post-processing: clip negative values to zero and rescale to unit
/// mass. Estimates are never clipped by default.
CurveEstimate truncate_renormalize(const CurveEstimate& est);

/// Default evaluation grid: n_points equispaced over
/// [min(w) - 3 h s, max(w) + 3 h s] with s the sample sd of w.
std::vector<double> default_grid(std::span<const double> w, double h, std::size_t n_points = 512);

namespace detail {
/// (1/nh) sum_i y_i K_{U,r}((x_j - w_i)/h) over the grid; y_i = 1 when
/// y_weights is null. Backbone of the density and regression estimators.
void plan_weighted_sums(const DeconvKernelPlan& plan, std::span<const double> w,
                        const double* y_weights, std::span<const double> grid, EvalPath path,
                        std::span<double> out);
}  // namespace detail

}  // namespace deconv
