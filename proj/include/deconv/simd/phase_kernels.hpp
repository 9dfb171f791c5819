#pragma once

#include <cstddef>
#include <string>

namespace deconv::simd {

// Trigonometric inner loops over equispaced phases t_q = t0 + q*dt. These are
// the hot paths of every quadrature-backed estimator, so each has a scalar
// reference implementation plus vectorized variants selected at runtime.

enum class Backend { Auto, Reference, Scalar, Avx2, Neon };

/// Backend in use after resolving Auto (cpu detection + DECONV_SIMD override).
Backend active_backend();
/// Force a backend (tests). Throws std::runtime_error if unsupported here.
void force_backend(Backend b);
std::string backend_name(Backend b);

/// out[i] = sum_q ( wc[q]*cos(t_q*y[i]) + ws[q]*sin(t_q*y[i]) ).
/// Either weight array may be null (treated as zero).
void weighted_phase_sum(const double* wc, const double* ws, std::size_t m,
                        double t0, double dt,
                        const double* y, std::size_t ny, double* out);

/// outc[q] = sum_j w_j*cos(t_q*x[j]), outs[q] = sum_j w_j*sin(t_q*x[j]),
/// with w_j = 1 when weights == nullptr. outs may be null if unneeded.
void phase_moment_sums(const double* x, const double* weights, std::size_t nx,
                       double t0, double dt, std::size_t m,
                       double* outc, double* outs);

// Naive libm-per-term implementations; the correctness oracle for the above.
void weighted_phase_sum_reference(const double* wc, const double* ws, std::size_t m,
                                  double t0, double dt,
                                  const double* y, std::size_t ny, double* out);
void phase_moment_sums_reference(const double* x, const double* weights, std::size_t nx,
                                 double t0, double dt, std::size_t m,
                                 double* outc, double* outs);

}  // namespace deconv::simd
