#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "deconv/common.hpp"

namespace deconv {

enum class ModelTag { Classical, Berkson };

/// Observed data under one of the measurement-error models. y is present for
/// regression data; x_true is retained by the simulator for oracle
/// diagnostics only and never feeds an estimator.
struct ContaminatedSample {
    std::vector<double> w;
    std::vector<double> y;
    std::vector<double> x_true;
    ModelTag model_tag = ModelTag::Classical;

    std::size_t size() const { return w.size(); }
    bool has_responses() const { return !y.empty(); }
    void validate() const;
};

struct EstimateMeta {
    std::string estimator;
    std::string kernel;
    std::string error;
    double h = 0.0;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    int degree = -1;       // regression only
    double ridge = 0.0;    // regression only
};

/// An estimated curve on a strictly increasing grid. flags is empty when all
/// points are good; otherwise flags[j] != 0 marks a failed local fit whose
/// value was set to 0.
struct CurveEstimate {
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<std::uint8_t> flags;
    EstimateMeta meta;

    void validate() const;
};

}  // namespace deconv
