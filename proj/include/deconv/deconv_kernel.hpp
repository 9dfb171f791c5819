#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "deconv/error_models.hpp"
#include "deconv/kernels.hpp"
#include "deconv/quadrature.hpp"

namespace deconv {

/// Precomputed plan for evaluating the deconvolution kernel
///   K_{U,r}(x) = (1/(2 pi i^r)) Int e^{-itx} phi_K^(r)(t) / phi_U(t/h) dt
/// (r = 0 gives K_U). The integrand is reduced to its real trigonometric form
/// over the compact support of phi_K: a cosine series for even r, a sine
/// series for odd r, with all constants folded into per-node weights.
class DeconvKernelPlan {
  public:
    DeconvKernelPlan(KernelSpec kernel, const ErrorModel& error, double h, int r = 0,
                     int n_quad = kDefaultQuadNodes);
    DeconvKernelPlan(KernelSpec kernel, const EmpiricalAbsPhiU& phi_hat, std::string phi_name,
                     double h, int r = 0, int n_quad = kDefaultQuadNodes);

    const KernelSpec& kernel() const { return kernel_; }
    double bandwidth() const { return h_; }
    int derivative_order() const { return r_; }
    const SpectralRule& rule() const { return rule_; }
    const std::string& error_name() const { return error_name_; }
    std::span<const double> node_weights() const { return node_weight_; }
    bool sine_form() const { return r_ % 2 == 1; }
    double max_node_weight() const { return max_node_weight_; }
    const std::vector<std::string>& warnings() const { return warnings_; }
    double phi_u(double t) const { return phi_u_(t); }

    double eval(double x) const;
    void eval_batch(std::span<const double> xs, std::span<double> out) const;

    /// Full complex quadrature of the defining integral (no parity reduction).
    std::complex<double> eval_complex(double x) const;

  private:
    void build(const std::function<double(double)>& phi_u);

    KernelSpec kernel_;
    double h_;
    int r_;
    SpectralRule rule_;
    std::function<double(double)> phi_u_;
    std::string error_name_;
    std::vector<double> node_weight_;
    double max_node_weight_ = 0.0;
    std::vector<std::string> warnings_;
};

double eval_KU(const DeconvKernelPlan& plan, double x);
double eval_KUr(const DeconvKernelPlan& plan, double x);

/// Max |Im| of the complex quadrature over a grid; diagnostic for the
/// real-valuedness of K_{U,r}.
double realness_residual(const DeconvKernelPlan& plan, std::span<const double> x_grid);

}  // namespace deconv
