#pragma once

#include <cmath>
#include <cstdint>

namespace holderlab {

/// Deterministic 64-bit generator (splitmix64). Results are identical across
/// platforms and independent of the standard library, which is what the
/// reproducibility contract of experiment records requires.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, bound). Modulo bias is below 2^-40 for the
    /// bounds used here (grid sizes well under 2^24).
    std::uint64_t below(std::uint64_t bound) { return next_u64() % bound; }

    /// Standard normal via Box-Muller, one value per call (no caching, so a
    /// generator's stream does not depend on call parity).
    double normal() {
        double u1 = uniform();
        double u2 = uniform();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    /// Derive an independent stream (for per-sample substreams).
    Rng fork(std::uint64_t salt) {
        return Rng(next_u64() ^ (0x9e3779b97f4a7c15ULL * (salt + 1)));
    }

private:
    std::uint64_t state_;
};

}  // namespace holderlab
