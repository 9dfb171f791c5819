#if defined(__aarch64__)

#include <arm_neon.h>

#include <cmath>
#include <cstddef>

#include "phase_kernels_impl.hpp"

namespace deconv::simd::detail {

namespace {

template <bool HasC, bool HasS>
void wps_block2(const double* wc, const double* ws, std::size_t m,
                double t0, double dt, const double* y, double* out) {
    double cda[2], sda[2], ca[2], sa[2];
    for (int k = 0; k < 2; ++k) {
        const double a = dt * y[k];
        cda[k] = std::cos(a);
        sda[k] = std::sin(a);
    }
    const float64x2_t cd = vld1q_f64(cda), sd = vld1q_f64(sda);
    float64x2_t acc = vdupq_n_f64(0.0);
    float64x2_t c = vdupq_n_f64(0.0), s = vdupq_n_f64(0.0);
    for (std::size_t q = 0; q < m; ++q) {
        if (q % kRefresh == 0) {
            for (int k = 0; k < 2; ++k) {
                const double ph = (t0 + static_cast<double>(q) * dt) * y[k];
                ca[k] = std::cos(ph);
                sa[k] = std::sin(ph);
            }
            c = vld1q_f64(ca);
            s = vld1q_f64(sa);
        }
        if constexpr (HasC) acc = vfmaq_n_f64(acc, c, wc[q]);
        if constexpr (HasS) acc = vfmaq_n_f64(acc, s, ws[q]);
        const float64x2_t cn = vfmsq_f64(vmulq_f64(c, cd), s, sd);
        s = vfmaq_f64(vmulq_f64(s, cd), c, sd);
        c = cn;
    }
    vst1q_f64(out, acc);
}

}  // namespace

void wps_neon(const double* wc, const double* ws, std::size_t m,
              double t0, double dt, const double* y, std::size_t ny, double* out) {
    std::size_t i = 0;
    for (; i + 2 <= ny; i += 2) {
        if (wc && ws)
            wps_block2<true, true>(wc, ws, m, t0, dt, y + i, out + i);
        else if (wc)
            wps_block2<true, false>(wc, ws, m, t0, dt, y + i, out + i);
        else if (ws)
            wps_block2<false, true>(wc, ws, m, t0, dt, y + i, out + i);
        else
            out[i] = out[i + 1] = 0.0;
    }
    if (i < ny) wps_scalar(wc, ws, m, t0, dt, y + i, ny - i, out + i);
}

void pms_neon(const double* x, const double* weights, std::size_t nx,
              double t0, double dt, std::size_t m, double* outc, double* outs) {
    for (std::size_t q = 0; q < m; ++q) {
        outc[q] = 0.0;
        if (outs) outs[q] = 0.0;
    }
    const std::size_t m2 = m - m % 2;
    double ca[2], sa[2];
    for (std::size_t j = 0; j < nx; ++j) {
        const double xj = x[j];
        const double wj = weights ? weights[j] : 1.0;
        const double a2 = 2.0 * dt * xj;
        const float64x2_t r2c = vdupq_n_f64(std::cos(a2));
        const float64x2_t r2s = vdupq_n_f64(std::sin(a2));
        float64x2_t c = vdupq_n_f64(0.0), s = vdupq_n_f64(0.0);
        for (std::size_t q = 0; q < m2; q += 2) {
            if (q % kRefresh == 0) {
                for (int k = 0; k < 2; ++k) {
                    const double ph = (t0 + static_cast<double>(q + k) * dt) * xj;
                    ca[k] = std::cos(ph);
                    sa[k] = std::sin(ph);
                }
                c = vld1q_f64(ca);
                s = vld1q_f64(sa);
            }
            vst1q_f64(outc + q, vfmaq_n_f64(vld1q_f64(outc + q), c, wj));
            if (outs) vst1q_f64(outs + q, vfmaq_n_f64(vld1q_f64(outs + q), s, wj));
            const float64x2_t cn = vfmsq_f64(vmulq_f64(c, r2c), s, r2s);
            s = vfmaq_f64(vmulq_f64(s, r2c), c, r2s);
            c = cn;
        }
        for (std::size_t q = m2; q < m; ++q) {
            const double ph = (t0 + static_cast<double>(q) * dt) * xj;
            outc[q] += wj * std::cos(ph);
            if (outs) outs[q] += wj * std::sin(ph);
        }
    }
}

}  // namespace deconv::simd::detail

#endif  // __aarch64__
