#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstddef>

#include "phase_kernels_impl.hpp"

namespace deconv::simd::detail {

namespace {

// 4 evaluation points per register; each lane runs its own rotation recurrence.
template <bool HasC, bool HasS>
void wps_block4(const double* wc, const double* ws, std::size_t m,
                double t0, double dt, const double* y, double* out) {
    const __m256d yv = _mm256_loadu_pd(y);
    alignas(32) double a[4], cda[4], sda[4], ca[4], sa[4];
    _mm256_store_pd(a, _mm256_mul_pd(_mm256_set1_pd(dt), yv));
    for (int k = 0; k < 4; ++k) {
        cda[k] = std::cos(a[k]);
        sda[k] = std::sin(a[k]);
    }
    const __m256d cd = _mm256_load_pd(cda), sd = _mm256_load_pd(sda);

    __m256d acc = _mm256_setzero_pd();
    __m256d c = _mm256_setzero_pd(), s = _mm256_setzero_pd();
    for (std::size_t q = 0; q < m; ++q) {
        if (q % kRefresh == 0) {
            for (int k = 0; k < 4; ++k) {
                const double ph = (t0 + static_cast<double>(q) * dt) * y[k];
                ca[k] = std::cos(ph);
                sa[k] = std::sin(ph);
            }
            c = _mm256_load_pd(ca);
            s = _mm256_load_pd(sa);
        }
        if constexpr (HasC) acc = _mm256_fmadd_pd(_mm256_set1_pd(wc[q]), c, acc);
        if constexpr (HasS) acc = _mm256_fmadd_pd(_mm256_set1_pd(ws[q]), s, acc);
        const __m256d cn = _mm256_fmsub_pd(c, cd, _mm256_mul_pd(s, sd));
        s = _mm256_fmadd_pd(s, cd, _mm256_mul_pd(c, sd));
        c = cn;
    }
    _mm256_storeu_pd(out, acc);
}

}  // namespace

void wps_avx2(const double* wc, const double* ws, std::size_t m,
              double t0, double dt, const double* y, std::size_t ny, double* out) {
    std::size_t i = 0;
    for (; i + 4 <= ny; i += 4) {
        if (wc && ws)
            wps_block4<true, true>(wc, ws, m, t0, dt, y + i, out + i);
        else if (wc)
            wps_block4<true, false>(wc, ws, m, t0, dt, y + i, out + i);
        else if (ws)
            wps_block4<false, true>(wc, ws, m, t0, dt, y + i, out + i);
        else
            for (int k = 0; k < 4; ++k) out[i + k] = 0.0;
    }
    if (i < ny) wps_scalar(wc, ws, m, t0, dt, y + i, ny - i, out + i);
}

// Lanes cover 4 consecutive phase nodes; the step rotates by 4*dt*x_j.
void pms_avx2(const double* x, const double* weights, std::size_t nx,
              double t0, double dt, std::size_t m, double* outc, double* outs) {
    for (std::size_t q = 0; q < m; ++q) {
        outc[q] = 0.0;
        if (outs) outs[q] = 0.0;
    }
    const std::size_t m4 = m - m % 4;
    alignas(32) double ca[4], sa[4];
    for (std::size_t j = 0; j < nx; ++j) {
        const double xj = x[j];
        const double wj = weights ? weights[j] : 1.0;
        const __m256d wv = _mm256_set1_pd(wj);
        const double a4 = 4.0 * dt * xj;
        const __m256d r4c = _mm256_set1_pd(std::cos(a4));
        const __m256d r4s = _mm256_set1_pd(std::sin(a4));
        __m256d c = _mm256_setzero_pd(), s = _mm256_setzero_pd();
        for (std::size_t q = 0; q < m4; q += 4) {
            if (q % kRefresh == 0) {
                for (int k = 0; k < 4; ++k) {
                    const double ph = (t0 + static_cast<double>(q + k) * dt) * xj;
                    ca[k] = std::cos(ph);
                    sa[k] = std::sin(ph);
                }
                c = _mm256_load_pd(ca);
                s = _mm256_load_pd(sa);
            }
            _mm256_storeu_pd(outc + q, _mm256_fmadd_pd(wv, c, _mm256_loadu_pd(outc + q)));
            if (outs) _mm256_storeu_pd(outs + q, _mm256_fmadd_pd(wv, s, _mm256_loadu_pd(outs + q)));
            const __m256d cn = _mm256_fmsub_pd(c, r4c, _mm256_mul_pd(s, r4s));
            s = _mm256_fmadd_pd(s, r4c, _mm256_mul_pd(c, r4s));
            c = cn;
        }
        for (std::size_t q = m4; q < m; ++q) {
            const double ph = (t0 + static_cast<double>(q) * dt) * xj;
            outc[q] += wj * std::cos(ph);
            if (outs) outs[q] += wj * std::sin(ph);
        }
    }
}

}  // namespace deconv::simd::detail

#endif  // x86_64
