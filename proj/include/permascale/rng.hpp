#pragma once

#include <cmath>
#include <cstdint>

namespace permascale {

/// Counter-based SplitMix64. The output at step i depends only on
/// (seed, i), so streams are identical across platforms and the generator
/// can be split by deriving child seeds.
class Rng {
  public:
    explicit Rng(std::uint64_t seed = 0) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Log-uniform entry in [1/lambda, lambda].
    double log_uniform(double lambda) { return std::exp(uniform(-1.0, 1.0) * std::log(lambda)); }

    /// Independent child stream.
    Rng split() { return Rng(next_u64()); }

  private:
    std::uint64_t state_;
};

} // namespace permascale
