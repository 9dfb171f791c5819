#include "deconv/density.hpp"

#include <algorithm>
#include <cmath>

#include "deconv/simd/phase_kernels.hpp"

namespace deconv {

void ContaminatedSample::validate() const {
    if (w.empty()) throw EmptySample("sample has no observations");
    if (!y.empty() && y.size() != w.size())
        throw ConfigInvalid("responses and observations have different lengths");
    if (!x_true.empty() && x_true.size() != w.size())
        throw ConfigInvalid("latent values and observations have different lengths");
}

void CurveEstimate::validate() const {
    if (grid.size() != values.size()) throw GridMismatch("curve grid/value length mismatch");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw GridMismatch("curve grid must be strictly increasing");
    for (double v : values)
        if (!std::isfinite(v)) throw NumericError("curve contains a non-finite value");
}

namespace {

bool use_spectral(EvalPath path, std::size_t n, std::size_t n_grid) {
    if (path == EvalPath::Direct) return false;
    if (path == EvalPath::Spectral) return true;
    return n_grid >= 16 && n * n_grid > 200000;
}

// sum_i series((x_j - w_i)/h) for every grid point, one quadrature per pair.
// wc/ws are the plan's premultiplied node weights (cos or sin form).
void direct_sums(const double* wc, const double* ws, std::size_t m, double t0, double dt,
                 std::span<const double> w, double h, std::span<const double> grid,
                 std::span<double> out) {
    std::vector<double> args(w.size()), vals(w.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        for (std::size_t i = 0; i < w.size(); ++i) args[i] = (grid[j] - w[i]) / h;
        simd::weighted_phase_sum(wc, ws, m, t0, dt, args.data(), args.size(), vals.data());
        double acc = 0.0;
        for (double v : vals) acc += v;
        out[j] = acc;
    }
}

// Same sums rearranged through the empirical phase moments of the data:
//   sum_i f((x - w_i)/h) = sum_q W_q [cos,sin](t_q x / h) x (data moments at t_q/h).
void spectral_sums(const double* weights, std::size_t m, bool sine_form, double t0, double dt,
                   std::span<const double> w, const double* y_weights, double h,
                   std::span<const double> grid, std::span<double> out) {
    std::vector<double> mc(m), ms(m);
    simd::phase_moment_sums(w.data(), y_weights, w.size(), t0 / h, dt / h, m, mc.data(), ms.data());
    std::vector<double> wc(m), ws(m);
    for (std::size_t q = 0; q < m; ++q) {
        if (!sine_form) {
            // cos(a(x-w)) = cos(ax)cos(aw) + sin(ax)sin(aw)
            wc[q] = weights[q] * mc[q];
            ws[q] = weights[q] * ms[q];
        } else {
            // sin(a(x-w)) = sin(ax)cos(aw) - cos(ax)sin(aw)
            wc[q] = -weights[q] * ms[q];
            ws[q] = weights[q] * mc[q];
        }
    }
    simd::weighted_phase_sum(wc.data(), ws.data(), m, t0 / h, dt / h, grid.data(), grid.size(),
                             out.data());
}

}  // namespace

namespace detail {

// Shared by density and regression: (1/nh) sum_i y_i K_{U,r}((x - W_i)/h) on a
// grid, where y_i == 1 when y_weights is null.
void plan_weighted_sums(const DeconvKernelPlan& plan, std::span<const double> w,
                        const double* y_weights, std::span<const double> grid, EvalPath path,
                        std::span<double> out) {
    const auto nw = plan.node_weights();
    const double h = plan.bandwidth();
    const auto& rule = plan.rule();
    if (use_spectral(path, w.size(), grid.size())) {
        spectral_sums(nw.data(), nw.size(), plan.sine_form(), rule.t0(), rule.dt(), w, y_weights, h,
                      grid, out);
    } else if (y_weights == nullptr) {
        const double* wc = plan.sine_form() ? nullptr : nw.data();
        const double* ws = plan.sine_form() ? nw.data() : nullptr;
        direct_sums(wc, ws, nw.size(), rule.t0(), rule.dt(), w, h, grid, out);
    } else {
        std::vector<double> args(w.size()), vals(w.size());
        const double* wc = plan.sine_form() ? nullptr : nw.data();
        const double* ws = plan.sine_form() ? nw.data() : nullptr;
        for (std::size_t j = 0; j < grid.size(); ++j) {
            for (std::size_t i = 0; i < w.size(); ++i) args[i] = (grid[j] - w[i]) / h;
            simd::weighted_phase_sum(wc, ws, nw.size(), rule.t0(), rule.dt(), args.data(),
                                     args.size(), vals.data());
            double acc = 0.0;
            for (std::size_t i = 0; i < w.size(); ++i) acc += y_weights[i] * vals[i];
            out[j] = acc;
        }
    }
    const double scale = 1.0 / (static_cast<double>(w.size()) * h);
    for (auto& v : out) v *= scale;
}

}  // namespace detail

CurveEstimate kde(std::span<const double> x_data, const KernelSpec& kernel, double h,
                  std::span<const double> grid, int n_quad, EvalPath path) {
    if (x_data.empty()) throw EmptySample("kde: empty sample");
    if (!(h > 0.0)) throw ConfigInvalid("kde: bandwidth must be positive");

    CurveEstimate est;
    est.grid.assign(grid.begin(), grid.end());
    est.values.resize(grid.size());
    const double inv_nh = 1.0 / (static_cast<double>(x_data.size()) * h);

    if (kernel.family == KernelFamily::Sinc && !use_spectral(path, x_data.size(), grid.size())) {
        for (std::size_t j = 0; j < grid.size(); ++j) {
            double acc = 0.0;
            for (double xi : x_data) acc += sinc_pi((grid[j] - xi) / h);
            est.values[j] = acc * inv_nh;
        }
    } else {
        const SpectralRule rule(kernel.support_phi(), n_quad);
        const std::size_t m = static_cast<std::size_t>(rule.n_nodes());
        std::vector<double> wq(m);
        for (std::size_t q = 0; q < m; ++q)
            wq[q] = rule.weights()[q] * eval_phi_K(kernel, rule.node(static_cast<int>(q))) / kTwoPi;
        if (use_spectral(path, x_data.size(), grid.size()))
            spectral_sums(wq.data(), m, false, rule.t0(), rule.dt(), x_data, nullptr, h, grid,
                          est.values);
        else
            direct_sums(wq.data(), nullptr, m, rule.t0(), rule.dt(), x_data, h, grid, est.values);
        for (auto& v : est.values) v *= inv_nh;
    }

    est.meta = EstimateMeta{"kde", kernel.name(), "none", h, x_data.size(), 0};
    return est;
}

CurveEstimate deconv_kde(const ContaminatedSample& sample, const DeconvKernelPlan& plan,
                         std::span<const double> grid, EvalPath path) {
    sample.validate();
    if (plan.derivative_order() != 0) throw ConfigInvalid("deconv_kde needs a plan with r = 0");
    if (sample.model_tag == ModelTag::Berkson)
        throw ModelMismatch("no deconvolution density estimator under the Berkson model");

    CurveEstimate est;
    est.grid.assign(grid.begin(), grid.end());
    est.values.resize(grid.size());
    detail::plan_weighted_sums(plan, sample.w, nullptr, grid, path, est.values);
    est.meta = EstimateMeta{"deconv-kde", plan.kernel().name(), plan.error_name(),
                            plan.bandwidth(), sample.size(), 0};
    return est;
}

double integrate_estimate(const CurveEstimate& est) { return trapezoid(est.grid, est.values); }

CurveEstimate truncate_renormalize(const CurveEstimate& est) {
    CurveEstimate out = est;
    for (auto& v : out.values) v = std::max(v, 0.0);
    const double mass = trapezoid(out.grid, out.values);
    if (mass > 0.0)
        for (auto& v : out.values) v /= mass;
    out.meta.estimator += "+truncated";
    return out;
}

std::vector<double> default_grid(std::span<const double> w, double h, std::size_t n_points) {
    if (w.empty()) throw EmptySample("default_grid: empty sample");
    double lo = w[0], hi = w[0], mean = 0.0;
    for (double v : w) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        mean += v;
    }
    mean /= static_cast<double>(w.size());
    double var = 0.0;
    for (double v : w) var += (v - mean) * (v - mean);
    var = w.size() > 1 ? var / static_cast<double>(w.size() - 1) : 0.0;
    const double margin = 3.0 * h * std::sqrt(var);
    return linspace(lo - margin, hi + margin, n_points);
}

}  // namespace deconv
