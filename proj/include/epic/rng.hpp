#pragma once

#include <cstdint>
#include <random>

namespace epic {

/// SplitMix64 step; used for seed derivation so that every (trial, purpose,
/// lane) triple gets a statistically independent stream.
inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Deterministic seed for a named sub-stream of a master seed.
inline constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t purpose,
                                           std::uint64_t lane = 0) {
    std::uint64_t s = splitmix64(master);
    s = splitmix64(s ^ purpose);
    s = splitmix64(s ^ lane);
    return s;
}

/// Seeded random stream. Distribution transforms are implemented by hand:
/// the standard <random> distributions are implementation-defined, which
/// would break bit-identical reproducibility across toolchains.
class Rng {
  public:
    explicit Rng(std::uint64_t seed = 0) : gen_(seed) {}

    /// Uniform double in [0, 1).
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(uniform01() * static_cast<double>(hi - lo + 1));
    }

    /// Standard normal via the Marsaglia polar method (caches the spare value).
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m;
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

  private:
    std::mt19937_64 gen_;
    bool has_spare_{false};
    double spare_{0.0};
};

}  // namespace epic
