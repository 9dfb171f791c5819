#include "deconv/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>

#include "deconv/deconv_kernel.hpp"
#include "deconv/rng.hpp"
#include "deconv/simulation.hpp"
#include "deconv/threading.hpp"

namespace deconv {

namespace {

// Composite Simpson over [a,b] with an odd node count.
double simpson(const std::function<double(double)>& f, double a, double b, int nodes) {
    if (nodes % 2 == 0) ++nodes;
    const double dt = (b - a) / static_cast<double>(nodes - 1);
    double acc = f(a) + f(b);
    for (int q = 1; q < nodes - 1; ++q)
        acc += (q % 2 == 1 ? 4.0 : 2.0) * f(a + dt * static_cast<double>(q));
    return acc * dt / 3.0;
}

}  // namespace

double theoretical_bias(const TrueDensity& truth, const KernelSpec& kernel, double h, double x) {
    const KernelMoments m = kernel_moment(kernel);  // throws UndefinedMoment for sinc / s=0
    return 0.5 * h * h * m.kappa * truth.second_deriv(x);
}

double theoretical_variance(double f_w_at_x, const KernelSpec& kernel, const ErrorModel& error,
                            double h, std::size_t n, int n_quad) {
    if (f_w_at_x < 0.0) throw ConfigInvalid("theoretical_variance: f_W(x) must be nonnegative");
    const SpectralRule rule(kernel.support_phi(), n_quad);
    double integral = 0.0;
    for (int q = 0; q < rule.n_nodes(); ++q) {
        const double t = rule.node(q);
        const double pk = eval_phi_K(kernel, t);
        const double pu = error.phi(t / h);
        if (std::fabs(pu) < 1e-12)
            throw VanishingCharacteristicFunction("phi_U vanishes inside the kernel support");
        integral += rule.weights()[static_cast<std::size_t>(q)] * pk * pk / (pu * pu);
    }
    return f_w_at_x * integral / (kTwoPi * static_cast<double>(n) * h);
}

double convolved_density(const TrueDensity& truth, const ErrorModel& error, double x) {
    switch (error.family) {
        case ErrorFamily::Degenerate:
            return truth.pdf(x);
        case ErrorFamily::Laplace: {
            const double b = error.param;
            const double span = 45.0 * b;
            const auto f = [&](double u) { return truth.pdf(x - u) * error.density(u); };
            // split at the Laplace kink
            return simpson(f, -span, 0.0, 4097) + simpson(f, 0.0, span, 4097);
        }
        case ErrorFamily::Gaussian: {
            const double span = 10.0 * error.param;
            const auto f = [&](double u) { return truth.pdf(x - u) * error.density(u); };
            return simpson(f, -span, span, 8193);
        }
    }
    return 0.0;
}

std::vector<double> theoretical_mse_profile(const TrueDensity& truth, const KernelSpec& kernel,
                                            const ErrorModel& error, std::size_t n,
                                            std::span<const double> h_grid, double x) {
    const double fw = convolved_density(truth, error, x);
    std::vector<double> out;
    out.reserve(h_grid.size());
    for (double h : h_grid) {
        const double b = theoretical_bias(truth, kernel, h, x);
        out.push_back(b * b + theoretical_variance(fw, kernel, error, h, n));
    }
    return out;
}

double empirical_ise(const CurveEstimate& est, const TrueDensity& truth) {
    est.validate();
    std::vector<double> sq(est.grid.size());
    for (std::size_t i = 0; i < est.grid.size(); ++i) {
        const double d = est.values[i] - truth.pdf(est.grid[i]);
        sq[i] = d * d;
    }
    return trapezoid(est.grid, sq);
}

double empirical_ise(const CurveEstimate& est, const CurveEstimate& reference) {
    if (est.grid.size() != reference.grid.size())
        throw GridMismatch("empirical_ise: grids have different sizes");
    for (std::size_t i = 0; i < est.grid.size(); ++i)
        if (est.grid[i] != reference.grid[i])
            throw GridMismatch("empirical_ise: grids are not aligned");
    std::vector<double> sq(est.grid.size());
    for (std::size_t i = 0; i < est.grid.size(); ++i) {
        const double d = est.values[i] - reference.values[i];
        sq[i] = d * d;
    }
    return trapezoid(est.grid, sq);
}

double bias_proxy_spectral(const TrueDensity& truth, const KernelSpec& kernel, double h) {
    if (truth.family() == TruthFamily::Uniform)
        throw ConfigInvalid("bias proxy needs a rapidly decaying phi_X (gaussian or mixture)");
    const auto phi2 = [&](double t) { return std::norm(truth.cf(t)); };
    const double edge = kernel.support_phi() / h;  // phi_K(ht) = 0 beyond here
    double t_hi = edge;
    while (phi2(t_hi) > 0.0 && t_hi < edge + 4000.0) t_hi += 1.0;

    const auto inner = [&](double t) {
        const double d = eval_phi_K(kernel, h * t) - 1.0;
        return phi2(t) * d * d;
    };
    // split at the support edge where the integrand loses smoothness
    const double lo_part = simpson(inner, 0.0, std::min(edge, t_hi), 16385);
    const double hi_part = t_hi > edge ? simpson(phi2, edge, t_hi, 16385) : 0.0;
    return 2.0 * (lo_part + hi_part) / kTwoPi;
}

namespace {

CurveEstimate estimate_for_oracle(const ContaminatedSample& sample, EstimatorKind kind,
                                  const KernelSpec& kernel, const ErrorModel& error, double h,
                                  std::span<const double> eval_grid, int n_quad) {
    if (kind == EstimatorKind::Kde) {
        const auto& data = sample.x_true.empty() ? sample.w : sample.x_true;
        return kde(data, kernel, h, eval_grid, n_quad);
    }
    const DeconvKernelPlan plan(kernel, error, h, 0, n_quad);
    return deconv_kde(sample, plan, eval_grid);
}

}  // namespace

OracleSearch oracle_bandwidth(const ContaminatedSample& sample, const TrueDensity& truth,
                              EstimatorKind kind, const KernelSpec& kernel,
                              const ErrorModel& error, std::span<const double> h_grid,
                              std::span<const double> eval_grid, int n_quad) {
    if (h_grid.size() < 2) throw ConfigInvalid("oracle_bandwidth: need an h grid");
    sample.validate();
    OracleSearch best;
    best.ise = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < h_grid.size(); ++i) {
        const CurveEstimate est =
            estimate_for_oracle(sample, kind, kernel, error, h_grid[i], eval_grid, n_quad);
        const double ise = empirical_ise(est, truth);
        // ties (plateaus within 1e-12) resolve toward the larger, smoother h
        if (ise <= best.ise + 1e-12) {
            best.h = h_grid[i];
            best.ise = ise;
            best.index = i;
        }
    }
    best.interior = best.index != 0 && best.index != h_grid.size() - 1;
    return best;
}

std::vector<double> default_h_grid(const ContaminatedSample& sample, std::size_t count) {
    double mean = 0.0;
    for (double v : sample.w) mean += v;
    mean /= static_cast<double>(sample.size());
    double var = 0.0;
    for (double v : sample.w) var += (v - mean) * (v - mean);
    const double sd = sample.size() > 1
                          ? std::sqrt(var / static_cast<double>(sample.size() - 1))
                          : 1.0;
    const double s = sd > 0.0 ? sd : 1.0;
    return log_spaced(0.05 * s, 2.0 * s, count);
}

std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
    if (!(lo > 0.0) || !(hi > lo) || count < 2) throw ConfigInvalid("log_spaced: bad range");
    std::vector<double> g(count);
    const double step = (std::log(hi) - std::log(lo)) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) g[i] = std::exp(std::log(lo) + step * static_cast<double>(i));
    return g;
}

namespace detail {

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw ConfigInvalid("quantile of an empty set");
    if (sorted.size() == 1) return sorted[0];
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
}

}  // namespace detail

SlopeFit fit_loglog_slope(std::span<const std::size_t> sizes, std::span<const double> medians) {
    if (sizes.size() != medians.size() || sizes.size() < 2)
        throw ConfigInvalid("slope fit needs matching sizes/medians, at least 2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(sizes.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const double x = std::log(static_cast<double>(sizes[i]));
        const double y = std::log(medians[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    SlopeFit fit;
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / n;
    return fit;
}

RateResult run_rate_experiment(const RateExperiment& exp) {
    if (exp.sizes.size() < 3) throw ConfigInvalid("rate experiment needs at least 3 sizes");
    for (std::size_t i = 1; i < exp.sizes.size(); ++i)
        if (exp.sizes[i] <= exp.sizes[i - 1])
            throw ConfigInvalid("rate experiment sizes must be strictly increasing");
    if (exp.replicates < 1) throw ConfigInvalid("rate experiment needs replicates >= 1");

    const auto [lo, hi] = exp.truth.support_hint();
    const std::vector<double> eval_grid = linspace(lo, hi, exp.ise_grid_points);

    RateResult result;
    result.raw_ise.resize(exp.sizes.size());
    for (std::size_t si = 0; si < exp.sizes.size(); ++si) {
        const std::size_t n = exp.sizes[si];
        auto& ises = result.raw_ise[si];
        ises.assign(static_cast<std::size_t>(exp.replicates), 0.0);
        parallel_for(static_cast<std::size_t>(exp.replicates), exp.threads, [&](std::size_t r) {
            Scenario scn;
            scn.truth = exp.truth;
            scn.error = exp.error;
            scn.n = n;
            scn.model = ModelKind::Density;
            scn.seed = CounterRng::derive_key({exp.seed, n, r});
            const ContaminatedSample sample = generate(scn);
            const std::vector<double> h_grid =
                exp.h_grid.empty() ? default_h_grid(sample) : exp.h_grid;
            const OracleSearch best = oracle_bandwidth(sample, exp.truth, exp.kind, exp.kernel,
                                                       exp.error, h_grid, eval_grid, exp.n_quad);
            ises[r] = best.ise;
        });
        std::vector<double> sorted = ises;
        std::sort(sorted.begin(), sorted.end());
        result.table.push_back(RatePoint{n, detail::quantile_sorted(sorted, 0.5),
                                         detail::quantile_sorted(sorted, 0.25),
                                         detail::quantile_sorted(sorted, 0.75)});
    }

    std::vector<double> medians;
    for (const auto& p : result.table) medians.push_back(p.median_ise);
    const SlopeFit fit = fit_loglog_slope(exp.sizes, medians);
    result.slope = fit.slope;
    result.intercept = fit.intercept;
    return result;
}

std::pair<double, double> bootstrap_slope_ci(const RateResult& result,
                                             std::span<const std::size_t> sizes, int resamples,
                                             std::uint64_t seed) {
    if (result.raw_ise.size() != sizes.size())
        throw ConfigInvalid("bootstrap: sizes do not match the stored replicate table");
    std::vector<double> slopes(static_cast<std::size_t>(resamples));
    CounterRng rng(CounterRng::derive_key({seed, 0xB007ull}));
    std::vector<double> medians(sizes.size());
    for (int b = 0; b < resamples; ++b) {
        for (std::size_t si = 0; si < sizes.size(); ++si) {
            const auto& pool = result.raw_ise[si];
            std::vector<double> draw(pool.size());
            for (auto& v : draw)
                v = pool[static_cast<std::size_t>(rng.uniform01() * static_cast<double>(pool.size())) %
                         pool.size()];
            std::sort(draw.begin(), draw.end());
            medians[si] = detail::quantile_sorted(draw, 0.5);
        }
        slopes[static_cast<std::size_t>(b)] = fit_loglog_slope(sizes, medians).slope;
    }
    std::sort(slopes.begin(), slopes.end());
    return {detail::quantile_sorted(slopes, 0.025), detail::quantile_sorted(slopes, 0.975)};
}

}  // namespace deconv
