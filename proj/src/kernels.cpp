#include "deconv/kernels.hpp"

#include <cmath>
#include <cstdio>

#include "deconv/simd/phase_kernels.hpp"

namespace deconv {

std::string KernelSpec::name() const {
    if (family == KernelFamily::Sinc) return "sinc";
    char buf[48];
    std::snprintf(buf, sizeof buf, "fp:r=%d,s=%d", r, s);
    return buf;
}

KernelSpec make_sinc_kernel() { return KernelSpec{KernelFamily::Sinc, 0, 0}; }

KernelSpec make_fourier_polynomial(int r, int s) {
    if (r <= 0 || r % 2 != 0)
        throw ConfigInvalid("FourierPolynomial kernel: r must be a positive even integer");
    if (s < 0) throw ConfigInvalid("FourierPolynomial kernel: s must be nonnegative");
    return KernelSpec{KernelFamily::FourierPolynomial, r, s};
}

KernelSpec parse_kernel_spec(const std::string& text) {
    if (text == "sinc") return make_sinc_kernel();
    int r = 0, s = -1;
    if (std::sscanf(text.c_str(), "fp:r=%d,s=%d", &r, &s) == 2) return make_fourier_polynomial(r, s);
    throw ConfigInvalid("unknown kernel spec '" + text + "' (expected \"sinc\" or \"fp:r=<even>,s=<int>\")");
}

double sinc_pi(double x) {
    if (x == std::floor(x)) return x == 0.0 ? 1.0 : 0.0;
    const double px = kPi * x;
    return std::sin(px) / px;
}

double eval_phi_K(const KernelSpec& spec, double t) {
    const double a = std::fabs(t);
    if (spec.family == KernelFamily::Sinc) return a <= kPi ? 1.0 : 0.0;
    if (a > 1.0) return 0.0;
    if (spec.s == 0) return 1.0;
    return std::pow(1.0 - std::pow(a, spec.r), spec.s);
}

double eval_phi_K_deriv(const KernelSpec& spec, double t, int order) {
    if (spec.family == KernelFamily::Sinc)
        throw UnsupportedKernel("phi_K of the sinc kernel is not differentiable at the support edge");
    if (order != 1 && order != 2) throw ConfigInvalid("eval_phi_K_deriv: order must be 1 or 2");
    if (spec.s < order)
        throw UnsupportedKernel("phi_K derivative of order " + std::to_string(order) +
                                " needs s >= " + std::to_string(order));
    if (std::fabs(t) > 1.0) return 0.0;
    // r even, so (1 - t^r)^s is smooth on (-1,1); values at |t| = 1 are the
    // one-sided limits from inside the support.
    const int r = spec.r, s = spec.s;
    const double tr = std::pow(t, r);
    const double base = 1.0 - tr;
    if (order == 1) {
        return -static_cast<double>(s) * static_cast<double>(r) * std::pow(t, r - 1) *
               std::pow(base, s - 1);
    }
    const double sr = static_cast<double>(s) * static_cast<double>(r);
    double v = -sr * static_cast<double>(r - 1) * std::pow(t, r - 2) * std::pow(base, s - 1);
    if (s >= 2)
        v += sr * static_cast<double>(r) * static_cast<double>(s - 1) * std::pow(t, 2 * r - 2) *
             std::pow(base, s - 2);
    return v;
}

KernelMoments kernel_moment(const KernelSpec& spec) {
    if (spec.family == KernelFamily::Sinc)
        throw UndefinedMoment("sinc kernel has no absolutely convergent second moment");
    if (spec.s == 0) throw UndefinedMoment("s = 0 kernel has no absolutely convergent second moment");
    KernelMoments m;
    m.kappa = -eval_phi_K_deriv(spec, 0.0, 2);
    m.order = KernelOrder::Second;
    return m;
}

void eval_kernel_batch(const KernelSpec& spec, std::span<const double> xs,
                       std::span<double> out, int n_quad) {
    if (out.size() != xs.size()) throw GridMismatch("eval_kernel_batch: output size mismatch");
    if (spec.family == KernelFamily::Sinc) {
        for (std::size_t i = 0; i < xs.size(); ++i) out[i] = sinc_pi(xs[i]);
        return;
    }
    const SpectralRule rule(spec.support_phi(), n_quad);
    std::vector<double> wc(static_cast<std::size_t>(rule.n_nodes()));
    for (int q = 0; q < rule.n_nodes(); ++q)
        wc[static_cast<std::size_t>(q)] =
            rule.weights()[static_cast<std::size_t>(q)] * eval_phi_K(spec, rule.node(q)) / kTwoPi;
    simd::weighted_phase_sum(wc.data(), nullptr, wc.size(), rule.t0(), rule.dt(), xs.data(),
                             xs.size(), out.data());
}

double eval_kernel(const KernelSpec& spec, double x, int n_quad) {
    if (spec.family == KernelFamily::Sinc) return sinc_pi(x);
    double out = 0.0;
    eval_kernel_batch(spec, std::span<const double>(&x, 1), std::span<double>(&out, 1), n_quad);
    return out;
}

}  // namespace deconv
