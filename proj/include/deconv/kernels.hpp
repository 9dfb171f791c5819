#pragma once

#include <span>
#include <string>
#include <vector>

#include "deconv/common.hpp"
#include "deconv/quadrature.hpp"

namespace deconv {

inline constexpr int kDefaultQuadNodes = 4097;

enum class KernelFamily { FourierPolynomial, Sinc };

/// A kernel defined through its compactly supported Fourier transform.
/// FourierPolynomial: phi_K(t) = (1 - |t|^r)^s on |t| <= 1, r even.
/// Sinc: K(x) = sin(pi x)/(pi x), phi_K = boxcar on |t| <= pi.
struct KernelSpec {
    KernelFamily family = KernelFamily::Sinc;
    int r = 0;  // FourierPolynomial only
    int s = 0;

    double support_phi() const { return family == KernelFamily::Sinc ? kPi : 1.0; }
    std::string name() const;
};

KernelSpec make_sinc_kernel();
KernelSpec make_fourier_polynomial(int r, int s);

/// Parses "sinc" or "fp:r=<even>,s=<int>".
KernelSpec parse_kernel_spec(const std::string& text);

enum class KernelOrder { Second, Infinite };

struct KernelMoments {
    double kappa = 0.0;  // second moment, = -phi_K''(0)
    KernelOrder order = KernelOrder::Second;
};

double eval_phi_K(const KernelSpec& spec, double t);

/// Exact derivative of phi_K, order 1 or 2. At |t| = 1 the limit from inside
/// the support is returned (0 whenever s > order). Sinc is rejected.
double eval_phi_K_deriv(const KernelSpec& spec, double t, int order);

double eval_kernel(const KernelSpec& spec, double x, int n_quad = kDefaultQuadNodes);
void eval_kernel_batch(const KernelSpec& spec, std::span<const double> xs,
                       std::span<double> out, int n_quad = kDefaultQuadNodes);

/// kappa = -phi_K''(0); throws UndefinedMoment for Sinc and for s = 0.
KernelMoments kernel_moment(const KernelSpec& spec);

/// sin(pi x)/(pi x) with exact values at integer arguments.
double sinc_pi(double x);

}  // namespace deconv
