#include "deconv/simulation.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "deconv/threading.hpp"

namespace deconv {

namespace {

// Role salts for stream splitting; one stream per variable, never shared.
constexpr std::uint64_t kRoleX = 0x58;
constexpr std::uint64_t kRoleU = 0x55;
constexpr std::uint64_t kRoleV = 0x56;

}  // namespace

RegressionFn parse_regression_fn(const std::string& text) {
    if (text == "square") return {"square", [](double x) { return x * x; }};
    if (text == "identity") return {"identity", [](double x) { return x; }};
    if (text == "sin") return {"sin", [](double x) { return std::sin(x); }};
    double a = 0.0, b = 0.0;
    if (std::sscanf(text.c_str(), "line:%lf,%lf", &a, &b) == 2)
        return {text, [a, b](double x) { return a * x + b; }};
    throw ConfigInvalid("unknown regression function '" + text + "'");
}

void Scenario::validate() const {
    if (n == 0) throw ConfigInvalid("scenario: n must be >= 1");
    const bool needs_g = model == ModelKind::Regression || model == ModelKind::Berkson;
    if (needs_g && !g) throw ConfigInvalid("scenario: regression models need a mean function g");
    if (!needs_g && g) throw ConfigInvalid("scenario: density model has no regression function");
    if (v_noise < 0.0) throw ConfigInvalid("scenario: response noise sd must be nonnegative");
}

Scenario preset_scenario(const std::string& name) {
    if (name == "fig31" || name == "fig31-n1000") {
        Scenario scn;
        scn.name = name;
        scn.truth = TrueDensity::gaussian(0.0, 1.0);
        scn.error = parse_error_model("laplace:varratio=0.1", scn.truth.variance());
        scn.n = name == "fig31" ? 100 : 1000;
        scn.model = ModelKind::Density;
        return scn;
    }
    throw ConfigInvalid("unknown preset '" + name + "'");
}

ContaminatedSample generate(const Scenario& scn) {
    scn.validate();
    ContaminatedSample out;
    out.w.resize(scn.n);

    CounterRng rng_x(CounterRng::derive_key({scn.seed, kRoleX}));
    CounterRng rng_u(CounterRng::derive_key({scn.seed, kRoleU}));
    CounterRng rng_v(CounterRng::derive_key({scn.seed, kRoleV}));

    switch (scn.model) {
        case ModelKind::Density: {
            out.x_true.resize(scn.n);
            for (std::size_t i = 0; i < scn.n; ++i) {
                out.x_true[i] = scn.truth.sample(rng_x);
                out.w[i] = out.x_true[i] + scn.error.sample_one(rng_u);
            }
            out.model_tag = ModelTag::Classical;
            break;
        }
        case ModelKind::Regression: {
            out.x_true.resize(scn.n);
            out.y.resize(scn.n);
            for (std::size_t i = 0; i < scn.n; ++i) {
                out.x_true[i] = scn.truth.sample(rng_x);
                out.w[i] = out.x_true[i] + scn.error.sample_one(rng_u);
                out.y[i] = scn.g->fn(out.x_true[i]) +
                           (scn.v_noise > 0.0 ? scn.v_noise * rng_v.normal() : 0.0);
            }
            out.model_tag = ModelTag::Classical;
            break;
        }
        case ModelKind::Berkson: {
            // the specified dose W is drawn from `truth`; the true dose is X = W + U
            out.x_true.resize(scn.n);
            out.y.resize(scn.n);
            for (std::size_t i = 0; i < scn.n; ++i) {
                out.w[i] = scn.truth.sample(rng_x);
                out.x_true[i] = out.w[i] + scn.error.sample_one(rng_u);
                out.y[i] = scn.g->fn(out.x_true[i]) +
                           (scn.v_noise > 0.0 ? scn.v_noise * rng_v.normal() : 0.0);
            }
            out.model_tag = ModelTag::Berkson;
            break;
        }
    }
    return out;
}

MonteCarloOutcome monte_carlo(const Scenario& scn_template, int replicates,
                              const std::function<double(const ContaminatedSample&)>& task,
                              int threads) {
    if (replicates < 1) throw ConfigInvalid("monte_carlo: need at least one replicate");
    MonteCarloOutcome out;
    out.value.assign(static_cast<std::size_t>(replicates),
                     std::numeric_limits<double>::quiet_NaN());
    out.errors.assign(static_cast<std::size_t>(replicates), std::string());

    parallel_for(static_cast<std::size_t>(replicates), threads, [&](std::size_t r) {
        Scenario scn = scn_template;
        scn.seed = CounterRng::derive_key({scn_template.seed, r});
        try {
            out.value[r] = task(generate(scn));
        } catch (const std::exception& e) {
            out.errors[r] = e.what();
        }
    });
    for (const auto& e : out.errors)
        if (!e.empty()) ++out.failures;
    return out;
}

}  // namespace deconv
