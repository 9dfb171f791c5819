#include "deconv/quadrature.hpp"

namespace deconv {

SpectralRule::SpectralRule(double t_max, int n_nodes) : t_max_(t_max), n_(n_nodes) {
    if (!(t_max > 0.0)) throw ConfigInvalid("SpectralRule: t_max must be positive");
    if (n_nodes < 257 || n_nodes % 2 == 0)
        throw ConfigInvalid("SpectralRule: node count must be odd and >= 257");
    dt_ = 2.0 * t_max_ / static_cast<double>(n_ - 1);
    weights_.resize(static_cast<std::size_t>(n_));
    const double w0 = dt_ / 3.0;
    for (int q = 0; q < n_; ++q)
        weights_[static_cast<std::size_t>(q)] = (q == 0 || q == n_ - 1) ? w0 : (q % 2 == 1 ? 4.0 * w0 : 2.0 * w0);
}

double trapezoid(std::span<const double> grid, std::span<const double> values) {
    if (grid.size() != values.size()) throw GridMismatch("trapezoid: grid/value length mismatch");
    if (grid.size() < 2) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i)
        acc += 0.5 * (grid[i] - grid[i - 1]) * (values[i] + values[i - 1]);
    return acc;
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
    std::vector<double> g(count);
    if (count == 1) {
        g[0] = lo;
        return g;
    }
    const double step = (hi - lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) g[i] = lo + step * static_cast<double>(i);
    return g;
}

}  // namespace deconv
