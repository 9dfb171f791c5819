#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace deconv {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Error hierarchy. ConfigError maps to CLI exit code 2, NumericError to 3.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnsupportedKernel : ConfigError {
    using ConfigError::ConfigError;
};
struct UndefinedMoment : ConfigError {
    using ConfigError::ConfigError;
};
struct EmptySample : ConfigError {
    using ConfigError::ConfigError;
};
struct ModelMismatch : ConfigError {
    using ConfigError::ConfigError;
};
struct InsufficientReplicates : ConfigError {
    using ConfigError::ConfigError;
};
struct IndexOutOfRange : ConfigError {
    using ConfigError::ConfigError;
};
struct GridMismatch : ConfigError {
    using ConfigError::ConfigError;
};
struct ConfigInvalid : ConfigError {
    using ConfigError::ConfigError;
};

struct VanishingCharacteristicFunction : NumericError {
    using NumericError::NumericError;
};
struct SingularLocalFit : NumericError {
    using NumericError::NumericError;
};
struct EmptyNeighborhood : NumericError {
    using NumericError::NumericError;
};

}  // namespace deconv
