#include <doctest.h>

#include <cmath>
#include <vector>

#include "deconv/rng.hpp"
#include "deconv/simd/phase_kernels.hpp"

using namespace deconv;
using simd::Backend;

namespace {

struct BackendGuard {
    ~BackendGuard() { simd::force_backend(Backend::Auto); }
};

std::vector<Backend> testable_backends() {
    std::vector<Backend> out{Backend::Scalar};
    for (Backend b : {Backend::Avx2, Backend::Neon}) {
        try {
            simd::force_backend(b);
            out.push_back(b);
        } catch (...) {
        }
    }
    simd::force_backend(Backend::Auto);
    return out;
}

}  // namespace

TEST_CASE("weighted_phase_sum backends agree with the libm reference") {
    BackendGuard guard;
    CounterRng rng(11);
    for (std::size_t m : {5uz, 64uz, 257uz, 1001uz}) {
        std::vector<double> wc(m), ws(m);
        for (std::size_t q = 0; q < m; ++q) {
            wc[q] = rng.uniform(-2.0, 2.0);
            ws[q] = rng.uniform(-2.0, 2.0);
        }
        const double t0 = rng.uniform(-4.0, 0.0);
        const double dt = rng.uniform(1e-3, 0.02);
        std::vector<double> y{0.0, 1.0, -1.0, 0.37, -250.0, 41.5, 3.25, 1e-9, 88.0};
        std::vector<double> ref(y.size());
        simd::weighted_phase_sum_reference(wc.data(), ws.data(), m, t0, dt, y.data(), y.size(),
                                           ref.data());
        double scale = 0.0;
        for (std::size_t q = 0; q < m; ++q) scale += std::fabs(wc[q]) + std::fabs(ws[q]);

        for (Backend b : testable_backends()) {
            simd::force_backend(b);
            std::vector<double> got(y.size());
            simd::weighted_phase_sum(wc.data(), ws.data(), m, t0, dt, y.data(), y.size(),
                                     got.data());
            for (std::size_t i = 0; i < y.size(); ++i)
                CHECK(std::fabs(got[i] - ref[i]) <= 5e-13 * scale + 1e-15);

            // cos-only and sin-only variants
            simd::weighted_phase_sum(wc.data(), nullptr, m, t0, dt, y.data(), y.size(), got.data());
            simd::weighted_phase_sum_reference(wc.data(), nullptr, m, t0, dt, y.data(), y.size(),
                                               ref.data());
            for (std::size_t i = 0; i < y.size(); ++i)
                CHECK(std::fabs(got[i] - ref[i]) <= 5e-13 * scale + 1e-15);
        }
        simd::force_backend(Backend::Auto);
    }
}

TEST_CASE("phase_moment_sums backends agree with the libm reference") {
    BackendGuard guard;
    CounterRng rng(29);
    for (std::size_t nx : {1uz, 7uz, 200uz}) {
        for (std::size_t m : {6uz, 255uz, 1025uz}) {
            std::vector<double> x(nx), w(nx);
            for (std::size_t j = 0; j < nx; ++j) {
                x[j] = rng.uniform(-30.0, 30.0);
                w[j] = rng.uniform(-1.5, 1.5);
            }
            const double t0 = -3.0, dt = 6.0 / static_cast<double>(m);
            std::vector<double> rc(m), rs(m), gc(m), gs(m);
            simd::phase_moment_sums_reference(x.data(), w.data(), nx, t0, dt, m, rc.data(),
                                              rs.data());
            const double scale = static_cast<double>(nx) * 1.5;
            for (Backend b : testable_backends()) {
                simd::force_backend(b);
                simd::phase_moment_sums(x.data(), w.data(), nx, t0, dt, m, gc.data(), gs.data());
                for (std::size_t q = 0; q < m; ++q) {
                    CHECK(std::fabs(gc[q] - rc[q]) <= 5e-13 * scale + 1e-15);
                    CHECK(std::fabs(gs[q] - rs[q]) <= 5e-13 * scale + 1e-15);
                }
                // unweighted, cos only
                simd::phase_moment_sums(x.data(), nullptr, nx, t0, dt, m, gc.data(), nullptr);
                simd::phase_moment_sums_reference(x.data(), nullptr, nx, t0, dt, m, rc.data(),
                                                  rs.data());
                for (std::size_t q = 0; q < m; ++q)
                    CHECK(std::fabs(gc[q] - rc[q]) <= 5e-13 * static_cast<double>(nx) + 1e-15);
            }
            simd::force_backend(Backend::Auto);
        }
    }
}

TEST_CASE("reference kernels compute what they claim") {
    // one tiny case checked against a hand-rolled loop, so the oracle itself
    // is pinned down
    const double wc[2] = {0.5, 2.0};
    const double ws[2] = {-1.0, 0.25};
    const double y = 0.7, t0 = 0.3, dt = 0.2;
    double out = 0.0;
    simd::weighted_phase_sum_reference(wc, ws, 2, t0, dt, &y, 1, &out);
    const double expect = 0.5 * std::cos(0.3 * 0.7) - 1.0 * std::sin(0.3 * 0.7) +
                          2.0 * std::cos(0.5 * 0.7) + 0.25 * std::sin(0.5 * 0.7);
    CHECK(out == doctest::Approx(expect).epsilon(1e-15));
}

TEST_CASE("unsupported backend is rejected") {
    BackendGuard guard;
#if !defined(__aarch64__)
    CHECK_THROWS(simd::force_backend(Backend::Neon));
#endif
    CHECK(simd::active_backend() != Backend::Auto);
}
