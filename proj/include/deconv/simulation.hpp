#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "deconv/error_models.hpp"
#include "deconv/estimates.hpp"
#include "deconv/truth.hpp"

namespace deconv {

enum class ModelKind { Density, Regression, Berkson };

struct RegressionFn {
    std::string name;
    std::function<double(double)> fn;
};

/// "square", "sin", "identity", or "line:<slope>,<intercept>".
RegressionFn parse_regression_fn(const std::string& text);

struct Scenario {
    std::string name = "custom";
    TrueDensity truth = TrueDensity::gaussian(0.0, 1.0);  // law of X (of W for Berkson)
    ErrorModel error;
    std::optional<RegressionFn> g;
    double v_noise = 0.0;
    std::size_t n = 100;
    ModelKind model = ModelKind::Density;
    std::uint64_t seed = 1;

    void validate() const;
};

/// Named presets; "fig31" is N(0,1) + Laplace with var(U)/var(X) = 0.1, n=100.
Scenario preset_scenario(const std::string& name);

/// Draws one sample under the scenario's model. Streams are split by
/// (seed, role) so X, U and V draws are independent and reproducible.
ContaminatedSample generate(const Scenario& scn);

/// Replicate r uses seed derive_key(seed, r). Exceptions in a task are
/// captured per replicate, not fatal.
struct MonteCarloOutcome {
    std::vector<double> value;          // one slot per replicate (NaN when failed)
    std::vector<std::string> errors;    // empty string when ok
    std::size_t failures = 0;
};

MonteCarloOutcome monte_carlo(const Scenario& scn_template, int replicates,
                              const std::function<double(const ContaminatedSample&)>& task,
                              int threads = 1);

}  // namespace deconv
