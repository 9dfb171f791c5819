#include <cmath>
#include <cstddef>

#include "phase_kernels_impl.hpp"

namespace deconv::simd {

void weighted_phase_sum_reference(const double* wc, const double* ws, std::size_t m,
                                  double t0, double dt,
                                  const double* y, std::size_t ny, double* out) {
    for (std::size_t i = 0; i < ny; ++i) {
        double acc = 0.0;
        for (std::size_t q = 0; q < m; ++q) {
            const double ph = (t0 + static_cast<double>(q) * dt) * y[i];
            if (wc) acc += wc[q] * std::cos(ph);
            if (ws) acc += ws[q] * std::sin(ph);
        }
        out[i] = acc;
    }
}

void phase_moment_sums_reference(const double* x, const double* weights, std::size_t nx,
                                 double t0, double dt, std::size_t m,
                                 double* outc, double* outs) {
    for (std::size_t q = 0; q < m; ++q) {
        const double t = t0 + static_cast<double>(q) * dt;
        double sc = 0.0, ss = 0.0;
        for (std::size_t j = 0; j < nx; ++j) {
            const double w = weights ? weights[j] : 1.0;
            sc += w * std::cos(t * x[j]);
            ss += w * std::sin(t * x[j]);
        }
        outc[q] = sc;
        if (outs) outs[q] = ss;
    }
}

namespace detail {

namespace {

template <bool HasC, bool HasS>
double wps_one(const double* wc, const double* ws, std::size_t m,
               double t0, double dt, double y) {
    const double a = dt * y;
    const double cd = std::cos(a), sd = std::sin(a);
    double acc = 0.0, c = 1.0, s = 0.0;
    for (std::size_t q = 0; q < m; ++q) {
        if (q % kRefresh == 0) {
            const double ph = (t0 + static_cast<double>(q) * dt) * y;
            c = std::cos(ph);
            s = std::sin(ph);
        }
        if constexpr (HasC) acc += wc[q] * c;
        if constexpr (HasS) acc += ws[q] * s;
        const double cn = c * cd - s * sd;
        s = s * cd + c * sd;
        c = cn;
    }
    return acc;
}

}  // namespace

void wps_scalar(const double* wc, const double* ws, std::size_t m,
                double t0, double dt, const double* y, std::size_t ny, double* out) {
    for (std::size_t i = 0; i < ny; ++i) {
        if (wc && ws)
            out[i] = wps_one<true, true>(wc, ws, m, t0, dt, y[i]);
        else if (wc)
            out[i] = wps_one<true, false>(wc, ws, m, t0, dt, y[i]);
        else if (ws)
            out[i] = wps_one<false, true>(wc, ws, m, t0, dt, y[i]);
        else
            out[i] = 0.0;
    }
}

void pms_scalar(const double* x, const double* weights, std::size_t nx,
                double t0, double dt, std::size_t m, double* outc, double* outs) {
    for (std::size_t q = 0; q < m; ++q) {
        outc[q] = 0.0;
        if (outs) outs[q] = 0.0;
    }
    for (std::size_t j = 0; j < nx; ++j) {
        const double w = weights ? weights[j] : 1.0;
        const double a = dt * x[j];
        const double cd = std::cos(a), sd = std::sin(a);
        double c = 1.0, s = 0.0;
        for (std::size_t q = 0; q < m; ++q) {
            if (q % kRefresh == 0) {
                const double ph = (t0 + static_cast<double>(q) * dt) * x[j];
                c = std::cos(ph);
                s = std::sin(ph);
            }
            outc[q] += w * c;
            if (outs) outs[q] += w * s;
            const double cn = c * cd - s * sd;
            s = s * cd + c * sd;
            c = cn;
        }
    }
}

}  // namespace detail
}  // namespace deconv::simd
