#pragma once

#include <cstddef>

// Per-backend entry points, linked into the dispatcher. Only the functions
// for backends compiled on this platform exist.
namespace deconv::simd::detail {

void wps_scalar(const double* wc, const double* ws, std::size_t m,
                double t0, double dt, const double* y, std::size_t ny, double* out);
void pms_scalar(const double* x, const double* weights, std::size_t nx,
                double t0, double dt, std::size_t m, double* outc, double* outs);

#if defined(__x86_64__) || defined(_M_X64)
#define DECONV_HAVE_AVX2_TU 1
void wps_avx2(const double* wc, const double* ws, std::size_t m,
              double t0, double dt, const double* y, std::size_t ny, double* out);
void pms_avx2(const double* x, const double* weights, std::size_t nx,
              double t0, double dt, std::size_t m, double* outc, double* outs);
#endif

#if defined(__aarch64__)
#define DECONV_HAVE_NEON_TU 1
void wps_neon(const double* wc, const double* ws, std::size_t m,
              double t0, double dt, const double* y, std::size_t ny, double* out);
void pms_neon(const double* x, const double* weights, std::size_t nx,
              double t0, double dt, std::size_t m, double* outc, double* outs);
#endif

// Rotation recurrences drift by one ulp per step; lanes are re-seeded from
// libm every kRefresh nodes to keep the drift below ~3e-14.
inline constexpr std::size_t kRefresh = 256;

}  // namespace deconv::simd::detail
