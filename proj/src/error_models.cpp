#include "deconv/error_models.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace deconv {

double ErrorModel::phi(double t) const {
    switch (family) {
        case ErrorFamily::Laplace: return 1.0 / (1.0 + param * param * t * t);
        case ErrorFamily::Gaussian: return std::exp(-0.5 * param * param * t * t);
        case ErrorFamily::Degenerate: return 1.0;
    }
    return 1.0;
}

double ErrorModel::variance() const {
    switch (family) {
        case ErrorFamily::Laplace: return 2.0 * param * param;
        case ErrorFamily::Gaussian: return param * param;
        case ErrorFamily::Degenerate: return 0.0;
    }
    return 0.0;
}

double ErrorModel::density(double x) const {
    switch (family) {
        case ErrorFamily::Laplace: return std::exp(-std::fabs(x) / param) / (2.0 * param);
        case ErrorFamily::Gaussian:
            return std::exp(-0.5 * x * x / (param * param)) / (param * std::sqrt(kTwoPi));
        case ErrorFamily::Degenerate: return x == 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    }
    return 0.0;
}

std::string ErrorModel::name() const {
    char buf[48];
    switch (family) {
        case ErrorFamily::Laplace: std::snprintf(buf, sizeof buf, "laplace:b=%.17g", param); return buf;
        case ErrorFamily::Gaussian: std::snprintf(buf, sizeof buf, "gaussian:sd=%.17g", param); return buf;
        case ErrorFamily::Degenerate: return "none";
    }
    return "?";
}

double ErrorModel::sample_one(CounterRng& rng) const {
    switch (family) {
        case ErrorFamily::Laplace: return rng.laplace(param);
        case ErrorFamily::Gaussian: return param * rng.normal();
        case ErrorFamily::Degenerate: return 0.0;
    }
    return 0.0;
}

ErrorModel make_laplace_error(double b) {
    if (!(b > 0.0)) throw ConfigInvalid("laplace error: scale b must be positive");
    // |phi_U(t)| (1+|t|)^2 = (1+t)^2/(1+b^2 t^2) >= min(1, 1/b^2); declare half of it.
    return ErrorModel{ErrorFamily::Laplace, b, TailClass{0.5 * std::min(1.0, 1.0 / (b * b)), 2.0}};
}

ErrorModel make_gaussian_error(double sd) {
    if (!(sd > 0.0)) throw ConfigInvalid("gaussian error: sd must be positive");
    return ErrorModel{ErrorFamily::Gaussian, sd, std::nullopt};  // no polynomial tail bound
}

ErrorModel make_degenerate_error() {
    return ErrorModel{ErrorFamily::Degenerate, 0.0, TailClass{1.0, 0.0}};
}

ErrorModel parse_error_model(const std::string& text, std::optional<double> var_x) {
    if (text == "none" || text == "degenerate") return make_degenerate_error();
    double v = 0.0;
    if (std::sscanf(text.c_str(), "laplace:b=%lf", &v) == 1) return make_laplace_error(v);
    if (std::sscanf(text.c_str(), "gaussian:sd=%lf", &v) == 1) return make_gaussian_error(v);
    if (std::sscanf(text.c_str(), "laplace:varratio=%lf", &v) == 1) {
        if (!var_x)
            throw ConfigInvalid("laplace:varratio needs the scenario's X distribution to resolve b");
        if (!(v > 0.0)) throw ConfigInvalid("laplace:varratio must be positive");
        return make_laplace_error(std::sqrt(0.5 * v * *var_x));
    }
    throw ConfigInvalid("unknown error model '" + text + "'");
}

std::vector<double> sample_error(const ErrorModel& model, std::size_t n, CounterRng& rng) {
    std::vector<double> out(n);
    for (auto& u : out) u = model.sample_one(rng);
    return out;
}

std::size_t ReplicatedSample::arity() const {
    if (rows.empty()) throw InsufficientReplicates("replicated sample is empty");
    const std::size_t m = rows.front().size();
    for (const auto& row : rows)
        if (row.size() != m) throw InsufficientReplicates("replicate rows have unequal arity");
    if (m < 2) throw InsufficientReplicates("need at least m = 2 replicates per subject");
    return m;
}

EmpiricalAbsPhiU::EmpiricalAbsPhiU(const ReplicatedSample& data) {
    data.arity();
    diffs_.reserve(data.rows.size());
    for (const auto& row : data.rows) diffs_.push_back(row[0] - row[1]);
    floor_ = 1.0 / std::sqrt(static_cast<double>(diffs_.size()));
}

double EmpiricalAbsPhiU::operator()(double t) const {
    double acc = 0.0;
    for (double d : diffs_) acc += std::cos(t * d);
    const double dhat = acc / static_cast<double>(diffs_.size());
    return std::sqrt(std::max(dhat, floor_));
}

std::vector<double> estimate_abs_phi_U(const ReplicatedSample& data, std::span<const double> t_grid) {
    const EmpiricalAbsPhiU est(data);
    std::vector<double> out;
    out.reserve(t_grid.size());
    for (double t : t_grid) out.push_back(est(t));
    return out;
}

}  // namespace deconv
