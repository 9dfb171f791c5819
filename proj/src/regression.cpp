#include "deconv/regression.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <utility>

namespace deconv {

namespace detail {

double local_linear_from_moments(double s0, double s1, double s2, double t0, double t1,
                                 double ridge, bool* ok) {
    const double det = s0 * s2 - s1 * s1;
    const double scale = std::fabs(s0 * s2) + std::fabs(s1 * s1);
    const double den = det + ridge * scale;
    if (scale == 0.0 || std::fabs(den) < 1e-300) {
        if (ok) *ok = false;
        return 0.0;
    }
    if (ok) *ok = true;
    return (s2 * t0 - s1 * t1) / den;
}

double weighted_polyfit(std::span<const double> x, std::span<const double> y,
                        std::span<const double> weights, double x0, double h, int degree,
                        double ridge, bool* ok) {
    const int p = degree;
    Eigen::MatrixXd xtx = Eigen::MatrixXd::Zero(p + 1, p + 1);
    Eigen::VectorXd xty = Eigen::VectorXd::Zero(p + 1);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double wgt = weights[i];
        if (wgt == 0.0) continue;
        const double u = (x0 - x[i]) / h;
        double pow_j = 1.0;
        Eigen::VectorXd basis(p + 1);
        for (int j = 0; j <= p; ++j) {
            basis(j) = pow_j;
            pow_j *= u;
        }
        xtx.noalias() += wgt * basis * basis.transpose();
        xty.noalias() += wgt * y[i] * basis;
    }
    const double scale = xtx.diagonal().cwiseAbs().maxCoeff();
    if (scale == 0.0) {
        if (ok) *ok = false;
        return 0.0;
    }
    for (int j = 0; j <= p; ++j) xtx(j, j) += ridge * scale;
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(xtx, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double cond = svd.singularValues()(0) / svd.singularValues()(p);
    if (!std::isfinite(cond) || cond > 1e12) {
        if (ok) *ok = false;
        return 0.0;
    }
    const Eigen::VectorXd c = svd.solve(xty);
    if (ok) *ok = true;
    return c(0);
}

double local_linear_closed_form(std::span<const double> x, std::span<const double> y,
                                const KernelSpec& kernel, double h, double x0, double ridge,
                                int n_quad, bool* ok) {
    std::vector<double> args(x.size()), k(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) args[i] = (x0 - x[i]) / h;
    eval_kernel_batch(kernel, args, k, n_quad);
    double s0 = 0, s1 = 0, s2 = 0, t0 = 0, t1 = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double u = args[i];
        s0 += k[i];
        s1 += u * k[i];
        s2 += u * u * k[i];
        t0 += y[i] * k[i];
        t1 += y[i] * u * k[i];
    }
    return local_linear_from_moments(s0, s1, s2, t0, t1, ridge, ok);
}

}  // namespace detail

namespace {

CurveEstimate run_pointwise(std::span<const double> grid,
                            const std::function<double(double, bool*)>& fit, EstimateMeta meta) {
    CurveEstimate est;
    est.grid.assign(grid.begin(), grid.end());
    est.values.resize(grid.size());
    bool any_flag = false;
    std::vector<std::uint8_t> flags(grid.size(), 0);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        bool ok = true;
        est.values[j] = fit(grid[j], &ok);
        if (!ok) {
            est.values[j] = 0.0;
            flags[j] = 1;
            any_flag = true;
        }
    }
    if (any_flag) est.flags = std::move(flags);
    est.meta = std::move(meta);
    return est;
}

void check_pairs(std::span<const double> x, std::span<const double> y) {
    if (x.empty()) throw EmptySample("regression: empty sample");
    if (x.size() != y.size()) throw ConfigInvalid("regression: x/y length mismatch");
}

}  // namespace

CurveEstimate local_constant(std::span<const double> x, std::span<const double> y,
                             const RegressionConfig& cfg, std::span<const double> grid) {
    check_pairs(x, y);
    if (!(cfg.h > 0.0)) throw ConfigInvalid("regression: bandwidth must be positive");
    EstimateMeta meta{"local-constant", cfg.kernel.name(), "none", cfg.h, x.size(), 0, 0, 0.0};
    std::vector<double> args(x.size()), k(x.size());
    return run_pointwise(
        grid,
        [&](double x0, bool* ok) {
            for (std::size_t i = 0; i < x.size(); ++i) args[i] = (x0 - x[i]) / cfg.h;
            eval_kernel_batch(cfg.kernel, args, k, cfg.n_quad);
            double num = 0.0, den = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                num += y[i] * k[i];
                den += k[i];
            }
            if (den == 0.0) {
                *ok = false;  // empty neighborhood: 0/0, never nonzero/0
                return 0.0;
            }
            *ok = true;
            return num / den;
        },
        std::move(meta));
}

CurveEstimate local_polynomial(std::span<const double> x, std::span<const double> y,
                               const RegressionConfig& cfg, std::span<const double> grid) {
    check_pairs(x, y);
    if (!(cfg.h > 0.0)) throw ConfigInvalid("regression: bandwidth must be positive");
    if (cfg.degree < 0) throw ConfigInvalid("regression: degree must be nonnegative");
    if (cfg.degree == 0) {
        CurveEstimate est = local_constant(x, y, cfg, grid);
        est.meta.estimator = "local-polynomial";
        return est;
    }
    EstimateMeta meta{"local-polynomial", cfg.kernel.name(), "none",
                      cfg.h,              x.size(),          0,      cfg.degree, cfg.ridge};
    std::vector<double> args(x.size()), k(x.size());
    return run_pointwise(
        grid,
        [&](double x0, bool* ok) {
            for (std::size_t i = 0; i < x.size(); ++i) args[i] = (x0 - x[i]) / cfg.h;
            eval_kernel_batch(cfg.kernel, args, k, cfg.n_quad);
            return detail::weighted_polyfit(x, y, k, x0, cfg.h, cfg.degree, cfg.ridge, ok);
        },
        std::move(meta));
}

CurveEstimate deconv_local_polynomial(const ContaminatedSample& sample, const RegressionConfig& cfg,
                                      const ErrorModel& error, std::span<const double> grid,
                                      EvalPath path) {
    sample.validate();
    if (!sample.has_responses()) throw ConfigInvalid("deconvolution regression needs responses");
    if (sample.model_tag == ModelTag::Berkson)
        throw ModelMismatch("no errors-in-variables regression estimator under the Berkson model");
    if (cfg.degree != 0 && cfg.degree != 1)
        throw ConfigInvalid("deconvolution regression supports p = 0 or 1 only");
    if (cfg.kernel.family != KernelFamily::FourierPolynomial || cfg.kernel.s < cfg.degree + 1)
        throw UnsupportedKernel(
            "deconvolution regression needs a FourierPolynomial kernel with s >= p+1");

    const std::size_t ng = grid.size();
    const char* name = cfg.degree == 0 ? "deconv-local-constant" : "deconv-local-linear";
    EstimateMeta meta{name,  cfg.kernel.name(), error.name(), cfg.h, sample.size(), 0,
                      cfg.degree, cfg.ridge};

    // S_r and T_r on the whole grid, r = 0..2p.
    std::vector<std::vector<double>> s(2 * cfg.degree + 1), t(2 * cfg.degree + 1);
    for (int r = 0; r <= 2 * cfg.degree; ++r) {
        const DeconvKernelPlan plan(cfg.kernel, error, cfg.h, r, cfg.n_quad);
        s[r].resize(ng);
        t[r].resize(ng);
        detail::plan_weighted_sums(plan, sample.w, nullptr, grid, path, s[r]);
        detail::plan_weighted_sums(plan, sample.w, sample.y.data(), grid, path, t[r]);
    }

    CurveEstimate est;
    est.grid.assign(grid.begin(), grid.end());
    est.values.resize(ng);
    std::vector<std::uint8_t> flags(ng, 0);
    bool any_flag = false;
    for (std::size_t j = 0; j < ng; ++j) {
        bool ok = true;
        double v;
        if (cfg.degree == 0) {
            v = s[0][j] == 0.0 ? 0.0 : t[0][j] / s[0][j];
            ok = s[0][j] != 0.0;
        } else {
            v = detail::local_linear_from_moments(s[0][j], s[1][j], s[2][j], t[0][j], t[1][j],
                                                  cfg.ridge, &ok);
        }
        est.values[j] = ok ? v : 0.0;
        if (!ok) {
            flags[j] = 1;
            any_flag = true;
        }
    }
    if (any_flag) est.flags = std::move(flags);
    est.meta = std::move(meta);
    return est;
}

}  // namespace deconv
