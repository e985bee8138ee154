#include "qleak/rng.hpp"

#include <cmath>
#include <numbers>

namespace qleak {

std::uint64_t substream_seed(std::uint64_t base, std::uint64_t stream) {
    // One SplitMix64 finalization round over base xor a stream-scaled
    // golden-gamma offset; distinct streams land in well-separated states.
    std::uint64_t z = base ^ (0x9E3779B97F4A7C15ULL * (stream + 1));
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double standard_normal(SplitMix64& gen) {
    // Box-Muller; guard the log against a zero uniform.
    double u1 = gen.uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double u2 = gen.uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

double log_pmf(std::int64_t n, std::int64_t k, double p, double q) {
    return std::lgamma(static_cast<double>(n) + 1.0) -
           std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0) +
           static_cast<double>(k) * std::log(p) +
           static_cast<double>(n - k) * std::log(q);
}

}  // namespace

std::int64_t binomial_draw(SplitMix64& gen, std::int64_t n, double p) {
    if (n <= 0) return 0;
    if (p <= 0.0) return 0;
    if (p >= 1.0) return n;

    constexpr std::int64_t kExactLimit = 100000;
    const double q = 1.0 - p;

    if (n > kExactLimit) {
        // Normal approximation; relative pmf error is O(1/sqrt(npq)) and npq
        // is >= ~2.5e4 p q here, far below any tolerance used downstream.
        const double mean = static_cast<double>(n) * p;
        const double sd = std::sqrt(mean * q);
        double k = std::round(mean + sd * standard_normal(gen));
        if (k < 0.0) k = 0.0;
        if (k > static_cast<double>(n)) k = static_cast<double>(n);
        return static_cast<std::int64_t>(k);
    }

    // Exact inversion, enumerating outcomes outward from the mode so the
    // expected number of pmf evaluations is O(sqrt(npq)).
    const std::int64_t mode =
        static_cast<std::int64_t>(static_cast<double>(n + 1) * p);
    const double u = gen.uniform();

    double pmf_lo = std::exp(log_pmf(n, mode, p, q));
    double pmf_hi = pmf_lo;
    std::int64_t lo = mode;
    std::int64_t hi = mode;
    double cum = pmf_lo;
    if (u < cum) return mode;

    while (lo > 0 || hi < n) {
        if (hi < n) {
            pmf_hi *= static_cast<double>(n - hi) /
                      static_cast<double>(hi + 1) * (p / q);
            ++hi;
            cum += pmf_hi;
            if (u < cum) return hi;
        }
        if (lo > 0) {
            pmf_lo *= static_cast<double>(lo) /
                      static_cast<double>(n - lo + 1) * (q / p);
            --lo;
            cum += pmf_lo;
            if (u < cum) return lo;
        }
    }
    // u landed in the rounding tail; return the mode.
    return mode;
}

}  // namespace qleak
