#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "deconv/common.hpp"
#include "deconv/rng.hpp"

namespace deconv {

enum class TruthFamily { Gaussian, Mixture, Uniform };

struct GaussianComponent {
    double weight = 1.0;
    double mean = 0.0;
    double sd = 1.0;
};

/// Reference distribution of the latent X with everything the theory formulas
/// need in closed form: density, second derivative, characteristic function.
class TrueDensity {
  public:
    static TrueDensity gaussian(double mean, double sd);
    static TrueDensity mixture(std::vector<GaussianComponent> components);
    static TrueDensity uniform(double a, double b);

    /// "gaussian:mean=<v>,sd=<v>", "uniform:a=<v>,b=<v>",
    /// "mixture:w,mean,sd[;w,mean,sd...]".
    static TrueDensity parse(const std::string& text);

    TruthFamily family() const { return family_; }
    double pdf(double x) const;
    double second_deriv(double x) const;  // f''; 0 inside a uniform's support
    std::complex<double> cf(double t) const;
    double mean() const;
    double variance() const;
    std::pair<double, double> support_hint(double eps_mass = 1e-8) const;
    double sample(CounterRng& rng) const;
    std::string name() const { return name_; }

  private:
    TruthFamily family_ = TruthFamily::Gaussian;
    std::vector<GaussianComponent> comps_;  // gaussian/mixture
    double a_ = 0.0, b_ = 1.0;              // uniform
    std::string name_;
};

}  // namespace deconv
