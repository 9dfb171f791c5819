#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "deconv/common.hpp"

namespace deconv {

/// Composite Simpson rule on the symmetric interval [-t_max, t_max] with an
/// odd number of equispaced nodes. Every spectral-domain integral in this
/// library routes through one of these objects; estimators that must agree at
/// machine precision (the minimum-contrast / deconvolution pair) share the
/// same rule parameters.
class SpectralRule {
  public:
    SpectralRule(double t_max, int n_nodes);

    double t_max() const { return t_max_; }
    int n_nodes() const { return n_; }
    double t0() const { return -t_max_; }
    double dt() const { return dt_; }
    double node(int q) const { return -t_max_ + static_cast<double>(q) * dt_; }
    std::span<const double> weights() const { return weights_; }

  private:
    double t_max_;
    int n_;
    double dt_;
    std::vector<double> weights_;
};

/// Trapezoid integral of tabulated values over a strictly increasing grid.
double trapezoid(std::span<const double> grid, std::span<const double> values);

/// Equispaced grid helper: count points from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, std::size_t count);

}  // namespace deconv
