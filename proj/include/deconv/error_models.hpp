#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "deconv/common.hpp"
#include "deconv/rng.hpp"

namespace deconv {

enum class ErrorFamily { Laplace, Gaussian, Degenerate };

/// Polynomial tail lower bound |phi_U(t)| >= C (1+|t|)^{-alpha}.
struct TailClass {
    double C = 1.0;
    double alpha = 0.0;
};

/// Symmetric error distribution with exact characteristic function. phi_U is
/// real, even, equals 1 at t = 0 and never vanishes, as deconvolution needs.
struct ErrorModel {
    ErrorFamily family = ErrorFamily::Degenerate;
    double param = 0.0;  // Laplace scale b, or Gaussian sd
    std::optional<TailClass> tail;

    double phi(double t) const;
    double variance() const;
    double density(double x) const;  // error density f_U
    std::string name() const;
    double sample_one(CounterRng& rng) const;
};

ErrorModel make_laplace_error(double b);
ErrorModel make_gaussian_error(double sd);
ErrorModel make_degenerate_error();

/// Parses "laplace:b=<v>", "gaussian:sd=<v>", "none", or
/// "laplace:varratio=<rho>" which needs var(X) to resolve b from
/// var(U) = rho * var(X) = 2 b^2.
ErrorModel parse_error_model(const std::string& text, std::optional<double> var_x = std::nullopt);

std::vector<double> sample_error(const ErrorModel& model, std::size_t n, CounterRng& rng);

/// Replicated observations W^(1..m) of common X values; row differences
/// W^(1) - W^(2) have characteristic function |phi_U|^2.
struct ReplicatedSample {
    std::vector<std::vector<double>> rows;
    std::size_t arity() const;  // throws InsufficientReplicates if m < 2 or ragged
};

/// |phi_U| estimated from first-minus-second replicate differences:
/// D(t) = mean cos(t * diff), estimate = sqrt(max(D(t), n^{-1/2})).
class EmpiricalAbsPhiU {
  public:
    explicit EmpiricalAbsPhiU(const ReplicatedSample& data);
    double operator()(double t) const;
    double floor_value() const { return floor_; }

  private:
    std::vector<double> diffs_;
    double floor_;
};

std::vector<double> estimate_abs_phi_U(const ReplicatedSample& data, std::span<const double> t_grid);

}  // namespace deconv
