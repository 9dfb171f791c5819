#include "deconv/simd/phase_kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "phase_kernels_impl.hpp"

namespace deconv::simd {

namespace {

bool backend_supported(Backend b) {
    switch (b) {
        case Backend::Auto:
        case Backend::Reference:
        case Backend::Scalar:
            return true;
        case Backend::Avx2:
#if defined(DECONV_HAVE_AVX2_TU)
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case Backend::Neon:
#if defined(DECONV_HAVE_NEON_TU)
            return true;
#else
            return false;
#endif
    }
    return false;
}

Backend detect() {
    if (const char* env = std::getenv("DECONV_SIMD")) {
        const std::string v(env);
        Backend req = Backend::Auto;
        if (v == "scalar") req = Backend::Scalar;
        else if (v == "reference") req = Backend::Reference;
        else if (v == "avx2") req = Backend::Avx2;
        else if (v == "neon") req = Backend::Neon;
        if (req != Backend::Auto && backend_supported(req)) return req;
    }
#if defined(DECONV_HAVE_AVX2_TU)
    if (backend_supported(Backend::Avx2)) return Backend::Avx2;
#endif
#if defined(DECONV_HAVE_NEON_TU)
    return Backend::Neon;
#endif
    return Backend::Scalar;
}

std::atomic<Backend> g_forced{Backend::Auto};

Backend current() {
    const Backend f = g_forced.load(std::memory_order_relaxed);
    if (f != Backend::Auto) return f;
    static const Backend detected = detect();
    return detected;
}

}  // namespace

Backend active_backend() { return current(); }

void force_backend(Backend b) {
    if (b != Backend::Auto && !backend_supported(b))
        throw std::runtime_error("simd backend not supported on this host: " + backend_name(b));
    g_forced.store(b, std::memory_order_relaxed);
}

std::string backend_name(Backend b) {
    switch (b) {
        case Backend::Auto: return "auto";
        case Backend::Reference: return "reference";
        case Backend::Scalar: return "scalar";
        case Backend::Avx2: return "avx2";
        case Backend::Neon: return "neon";
    }
    return "?";
}

void weighted_phase_sum(const double* wc, const double* ws, std::size_t m,
                        double t0, double dt,
                        const double* y, std::size_t ny, double* out) {
    switch (current()) {
#if defined(DECONV_HAVE_AVX2_TU)
        case Backend::Avx2:
            detail::wps_avx2(wc, ws, m, t0, dt, y, ny, out);
            return;
#endif
#if defined(DECONV_HAVE_NEON_TU)
        case Backend::Neon:
            detail::wps_neon(wc, ws, m, t0, dt, y, ny, out);
            return;
#endif
        case Backend::Reference:
            weighted_phase_sum_reference(wc, ws, m, t0, dt, y, ny, out);
            return;
        default:
            detail::wps_scalar(wc, ws, m, t0, dt, y, ny, out);
            return;
    }
}

void phase_moment_sums(const double* x, const double* weights, std::size_t nx,
                       double t0, double dt, std::size_t m,
                       double* outc, double* outs) {
    switch (current()) {
#if defined(DECONV_HAVE_AVX2_TU)
        case Backend::Avx2:
            detail::pms_avx2(x, weights, nx, t0, dt, m, outc, outs);
            return;
#endif
#if defined(DECONV_HAVE_NEON_TU)
        case Backend::Neon:
            detail::pms_neon(x, weights, nx, t0, dt, m, outc, outs);
            return;
#endif
        case Backend::Reference:
            phase_moment_sums_reference(x, weights, nx, t0, dt, m, outc, outs);
            return;
        default:
            detail::pms_scalar(x, weights, nx, t0, dt, m, outc, outs);
            return;
    }
}

}  // namespace deconv::simd
