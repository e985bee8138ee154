// rng.hpp — SplitMix64 generator with per-point substreams and exact
// binomial sampling.
//
// SplitMix64 (Steele, Lea & Flood 2014) is a portable 64-bit generator with a
// closed-form jump: a substream for time point k is obtained by mixing the
// base seed with k, so parallel sampling across points is order-independent
// and reproducible. The binomial sampler enumerates outcomes outward from the
// mode with exact pmf recurrences (any fixed enumeration order inverts the
// distribution exactly); for very large ensembles it switches to the normal
// approximation, whose error is negligible at that scale.

#pragma once

#include <cstdint>

namespace qleak {

// SplitMix64: state advances by the golden-gamma increment; output is the
// finalized state. Passes standard statistical batteries at this use scale.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t state_;
};

// Derive a decorrelated substream seed from a base seed and a stream index
// (e.g. a time-point index or trial number).
std::uint64_t substream_seed(std::uint64_t base, std::uint64_t stream);

// Standard normal deviate (Box-Muller).
double standard_normal(SplitMix64& gen);

// One binomial draw, exact in distribution for n <= 100000 (mode-centered
// inversion); normal approximation with rounding and clamping above that.
std::int64_t binomial_draw(SplitMix64& gen, std::int64_t n, double p);

}  // namespace qleak
