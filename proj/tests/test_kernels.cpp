#include <doctest.h>

#include <cmath>
#include <vector>

#include "deconv/kernels.hpp"
#include "deconv/quadrature.hpp"
#include "oracles.hpp"

using namespace deconv;

TEST_CASE("phi_K values") {
    const KernelSpec q22 = make_fourier_polynomial(2, 2);
    CHECK(eval_phi_K(q22, 0.0) == 1.0);
    CHECK(eval_phi_K(q22, 0.5) == doctest::Approx(0.5625).epsilon(1e-15));
    CHECK(eval_phi_K(q22, -0.5) == eval_phi_K(q22, 0.5));
    CHECK(eval_phi_K(q22, 1.5) == 0.0);

    const KernelSpec sinc = make_sinc_kernel();
    CHECK(eval_phi_K(sinc, 4.0) == 0.0);
    CHECK(eval_phi_K(sinc, 3.0) == 1.0);
    CHECK(eval_phi_K(sinc, 0.0) == 1.0);
}

TEST_CASE("phi_K derivatives match finite differences") {
    CHECK(eval_phi_K_deriv(make_fourier_polynomial(2, 2), 0.0, 2) == doctest::Approx(-4.0));
    CHECK(eval_phi_K_deriv(make_fourier_polynomial(2, 3), 0.0, 1) == 0.0);
    CHECK(eval_phi_K_deriv(make_fourier_polynomial(2, 1), 0.5, 1) == doctest::Approx(-1.0));

    for (const auto& spec : {make_fourier_polynomial(2, 2), make_fourier_polynomial(2, 3),
                             make_fourier_polynomial(4, 2)}) {
        const auto phi = [&](double t) { return eval_phi_K(spec, t); };
        for (int i = 0; i < 20; ++i) {
            const double t = -0.9 + 1.8 * i / 19.0;
            CHECK(eval_phi_K_deriv(spec, t, 1) == doctest::Approx(oracles::finite_diff(phi, t, 1)).epsilon(1e-6));
            CHECK(eval_phi_K_deriv(spec, t, 2) ==
                  doctest::Approx(oracles::finite_diff(phi, t, 2)).epsilon(1e-4).scale(1.0));
        }
    }
    // one-sided convention at the support edge
    CHECK(eval_phi_K_deriv(make_fourier_polynomial(2, 2), 1.0, 1) == 0.0);   // s > order
    CHECK(eval_phi_K_deriv(make_fourier_polynomial(2, 1), 1.0, 1) == -2.0);  // s == order
    CHECK(eval_phi_K_deriv(make_fourier_polynomial(2, 2), 1.5, 2) == 0.0);

    CHECK_THROWS_AS(eval_phi_K_deriv(make_sinc_kernel(), 0.0, 1), UnsupportedKernel);
    CHECK_THROWS_AS(eval_phi_K_deriv(make_fourier_polynomial(2, 1), 0.0, 2), UnsupportedKernel);
}

TEST_CASE("sinc kernel evaluation") {
    const KernelSpec sinc = make_sinc_kernel();
    CHECK(eval_kernel(sinc, 0.0) == 1.0);
    CHECK(eval_kernel(sinc, 1.0) == 0.0);     // exact at integers
    CHECK(eval_kernel(sinc, -17.0) == 0.0);
    CHECK(eval_kernel(sinc, 0.5) == doctest::Approx(2.0 / oracles::kPi).epsilon(1e-12));
    CHECK(eval_kernel(sinc, 0.5) == doctest::Approx(0.6366198).epsilon(1e-6));
}

TEST_CASE("fourier-polynomial kernel evaluation") {
    const KernelSpec q22 = make_fourier_polynomial(2, 2);
    // K(0) = (1/2pi) Int phi = (1/2pi)(16/15)
    CHECK(eval_kernel(q22, 0.0) == doctest::Approx(16.0 / (15.0 * kTwoPi)).epsilon(1e-10));
    // even in x
    for (double x : {0.3, 1.7, 4.2, 11.0})
        CHECK(std::fabs(eval_kernel(q22, x) - eval_kernel(q22, -x)) <= 1e-12);
    // doubling the node count moves values by < 1e-8
    for (double x : {0.0, 0.9, 3.3})
        CHECK(std::fabs(eval_kernel(q22, x, 4097) - eval_kernel(q22, x, 8193)) <= 1e-8);
}

TEST_CASE("kernel mass over [-50,50]") {
    // The window truncation dominates: K has oscillatory tails of order
    // x^{-(s+2)}-ish, so the achievable closeness to 1 is family-dependent
    // (1.4e-4, 3.9e-5, 1.1e-6 for s = 1,2,3). phi_K(0) = 1 is the exact
    // witness of unit mass over the whole line.
    struct Row {
        int s;
        double tol;
    };
    for (const Row row : {Row{1, 2.5e-4}, Row{2, 7e-5}, Row{3, 3e-6}}) {
        const KernelSpec spec = make_fourier_polynomial(2, row.s);
        CHECK(eval_phi_K(spec, 0.0) == 1.0);
        const auto grid = linspace(-50.0, 50.0, 20001);
        std::vector<double> k(grid.size());
        eval_kernel_batch(spec, grid, k);
        CHECK(std::fabs(trapezoid(grid, k) - 1.0) <= row.tol);
    }
}

TEST_CASE("kernel second moments") {
    CHECK(kernel_moment(make_fourier_polynomial(2, 2)).kappa == doctest::Approx(4.0));
    CHECK(kernel_moment(make_fourier_polynomial(2, 3)).kappa == doctest::Approx(6.0));
    CHECK(kernel_moment(make_fourier_polynomial(2, 2)).order == KernelOrder::Second);
    // r >= 4 families have vanishing second moment (higher-order kernels)
    CHECK(kernel_moment(make_fourier_polynomial(4, 2)).kappa == doctest::Approx(0.0));

    CHECK_THROWS_AS(kernel_moment(make_sinc_kernel()), UndefinedMoment);
    CHECK_THROWS_AS(kernel_moment(make_fourier_polynomial(2, 0)), UndefinedMoment);

    // quadrature oracle for kappa: Int x^2 K(x) dx over [-50,50]; the
    // oscillatory tails cap the attainable accuracy (x^2 K ~ 1/x for s=2)
    for (const auto& [s, tol] : std::vector<std::pair<int, double>>{{2, 0.1}, {3, 0.02}}) {
        const KernelSpec spec = make_fourier_polynomial(2, s);
        const auto grid = linspace(-50.0, 50.0, 40001);
        std::vector<double> vals(grid.size());
        eval_kernel_batch(spec, grid, vals);
        for (std::size_t i = 0; i < grid.size(); ++i) vals[i] *= grid[i] * grid[i];
        CHECK(std::fabs(trapezoid(grid, vals) - kernel_moment(spec).kappa) <= tol);
    }
}

TEST_CASE("kernel spec parsing and validation") {
    CHECK(parse_kernel_spec("sinc").family == KernelFamily::Sinc);
    const KernelSpec k = parse_kernel_spec("fp:r=2,s=3");
    CHECK(k.r == 2);
    CHECK(k.s == 3);
    CHECK(k.name() == "fp:r=2,s=3");
    CHECK(parse_kernel_spec("sinc").support_phi() == oracles::kPi);
    CHECK(k.support_phi() == 1.0);
    CHECK_THROWS_AS(parse_kernel_spec("fp:r=3,s=2"), ConfigInvalid);  // odd r
    CHECK_THROWS_AS(parse_kernel_spec("gauss"), ConfigInvalid);
    CHECK_THROWS_AS(make_fourier_polynomial(2, -1), ConfigInvalid);
}

TEST_CASE("spectral rule shape") {
    const SpectralRule rule(1.0, 257);
    CHECK(rule.node(0) == -1.0);
    CHECK(rule.node(256) == doctest::Approx(1.0));
    double mass = 0.0;
    for (double w : rule.weights()) mass += w;
    CHECK(mass == doctest::Approx(2.0).epsilon(1e-14));  // integrates constants exactly
    CHECK_THROWS_AS(SpectralRule(1.0, 256), ConfigInvalid);
    CHECK_THROWS_AS(SpectralRule(1.0, 255), ConfigInvalid);
}
