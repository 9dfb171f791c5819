#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace deconv {

/// Counter-based random stream: output i is a mix of (key, i), so streams can
/// be split by key and replayed from any point. One stream per logical role
/// (X draws, U draws, V draws, ...), never shared between consumers.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t key) : key_(key) {}

    /// SplitMix64 finalizer.
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Folds a tuple of values (seed, replicate, role, ...) into one stream key.
    static std::uint64_t derive_key(std::initializer_list<std::uint64_t> parts) {
        std::uint64_t k = 0x6A09E667F3BCC909ull;  // arbitrary nonzero start
        for (std::uint64_t p : parts) k = mix(k ^ (p + 0x9E3779B97F4A7C15ull + (k << 6) + (k >> 2)));
        return k;
    }

    std::uint64_t next_u64() {
        ctr_ += 0x9E3779B97F4A7C15ull;
        return mix(key_ + ctr_);
    }

    /// Uniform on the open interval (0,1); safe under log().
    double uniform01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    /// Standard normal via the inverse CDF (Wichura's PPND16), so one uniform
    /// maps to one normal and the stream layout is draw-for-draw stable.
    double normal();

    double normal(double mean, double sd) { return mean + sd * normal(); }

    /// Laplace with density (1/2b) exp(-|x|/b).
    double laplace(double b) {
        const double u = uniform01() - 0.5;
        return (u < 0 ? b : -b) * std::log(1.0 - 2.0 * (u < 0 ? -u : u));
    }

  private:
    std::uint64_t key_;
    std::uint64_t ctr_ = 0;
};

}  // namespace deconv
