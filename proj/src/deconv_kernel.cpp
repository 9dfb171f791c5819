#include "deconv/deconv_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "deconv/simd/phase_kernels.hpp"

namespace deconv {

namespace {

constexpr double kPhiUFloor = 1e-12;

int parity_sign(int r) {
    // (1/i^r) applied to the surviving trig component: r=0 -> +cos, r=1 -> -sin,
    // r=2 -> -cos (r=3 would be +sin).
    switch (r % 4) {
        case 0: return +1;
        case 1: return -1;
        case 2: return -1;
        default: return +1;
    }
}

}  // namespace

DeconvKernelPlan::DeconvKernelPlan(KernelSpec kernel, const ErrorModel& error, double h, int r,
                                   int n_quad)
    : kernel_(kernel),
      h_(h),
      r_(r),
      rule_(kernel.support_phi(), n_quad),
      error_name_(error.name()) {
    ErrorModel copy = error;
    phi_u_ = [copy](double t) { return copy.phi(t); };
    build(phi_u_);
}

DeconvKernelPlan::DeconvKernelPlan(KernelSpec kernel, const EmpiricalAbsPhiU& phi_hat,
                                   std::string phi_name, double h, int r, int n_quad)
    : kernel_(kernel),
      h_(h),
      r_(r),
      rule_(kernel.support_phi(), n_quad),
      error_name_(std::move(phi_name)) {
    EmpiricalAbsPhiU copy = phi_hat;
    phi_u_ = [copy](double t) { return copy(t); };
    build(phi_u_);
}

void DeconvKernelPlan::build(const std::function<double(double)>& phi_u) {
    if (!(h_ > 0.0)) throw ConfigInvalid("deconvolution plan: bandwidth must be positive");
    if (r_ < 0 || r_ > 2) throw ConfigInvalid("deconvolution plan: derivative order must be 0, 1 or 2");
    if (r_ >= 1 && kernel_.family == KernelFamily::Sinc)
        throw UnsupportedKernel("K_{U,r} needs a differentiable phi_K; the sinc kernel has none");

    const int m = rule_.n_nodes();
    node_weight_.resize(static_cast<std::size_t>(m));
    const double sign = static_cast<double>(parity_sign(r_));
    for (int q = 0; q < m; ++q) {
        const double t = rule_.node(q);
        const double pu = phi_u(t / h_);
        if (std::fabs(pu) < kPhiUFloor)
            throw VanishingCharacteristicFunction("phi_U(t/h) ~ 0 at quadrature node t = " +
                                                  std::to_string(t));
        const double num = r_ == 0 ? eval_phi_K(kernel_, t) : eval_phi_K_deriv(kernel_, t, r_);
        const double w = sign * rule_.weights()[static_cast<std::size_t>(q)] * num / (kTwoPi * pu);
        node_weight_[static_cast<std::size_t>(q)] = w;
        max_node_weight_ = std::max(max_node_weight_, std::fabs(num / pu));
    }
    if (max_node_weight_ > 1e8)
        warnings_.push_back("variance blow-up regime: max |phi_K^(r)/phi_U| node weight " +
                            std::to_string(max_node_weight_));
}

double DeconvKernelPlan::eval(double x) const {
    double out = 0.0;
    eval_batch(std::span<const double>(&x, 1), std::span<double>(&out, 1));
    return out;
}

void DeconvKernelPlan::eval_batch(std::span<const double> xs, std::span<double> out) const {
    if (out.size() != xs.size()) throw GridMismatch("eval_batch: output size mismatch");
    const double* wc = sine_form() ? nullptr : node_weight_.data();
    const double* ws = sine_form() ? node_weight_.data() : nullptr;
    simd::weighted_phase_sum(wc, ws, node_weight_.size(), rule_.t0(), rule_.dt(), xs.data(),
                             xs.size(), out.data());
}

std::complex<double> DeconvKernelPlan::eval_complex(double x) const {
    // i^{-r} * (1/2pi) sum w_q e^{-i t_q x} phi^(r)(t_q)/phi_U(t_q/h); the
    // parity-reduced path must equal its real part with |Im| ~ 0.
    std::complex<double> acc{0.0, 0.0};
    const int m = rule_.n_nodes();
    for (int q = 0; q < m; ++q) {
        const double t = rule_.node(q);
        const double num = r_ == 0 ? eval_phi_K(kernel_, t) : eval_phi_K_deriv(kernel_, t, r_);
        const double g = rule_.weights()[static_cast<std::size_t>(q)] * num / (kTwoPi * phi_u_(t / h_));
        acc += g * std::complex<double>(std::cos(t * x), -std::sin(t * x));
    }
    const std::complex<double> inv_i_r = std::pow(std::complex<double>(0.0, -1.0), r_);
    return inv_i_r * acc;
}

double eval_KU(const DeconvKernelPlan& plan, double x) {
    if (plan.derivative_order() != 0)
        throw ConfigInvalid("eval_KU needs a plan with r = 0; use eval_KUr");
    return plan.eval(x);
}

double eval_KUr(const DeconvKernelPlan& plan, double x) {
    if (plan.derivative_order() < 1)
        throw ConfigInvalid("eval_KUr needs a plan with r >= 1; use eval_KU");
    return plan.eval(x);
}

double realness_residual(const DeconvKernelPlan& plan, std::span<const double> x_grid) {
    double worst = 0.0;
    for (double x : x_grid) worst = std::max(worst, std::fabs(plan.eval_complex(x).imag()));
    return worst;
}

}  // namespace deconv
