#pragma once

#include <cstdint>
#include <random>

namespace riesz {

/// Deterministic random stream. Doubles are derived from raw 64-bit draws
/// so that identical seeds give identical values on every platform.
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1).
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi) {
        return lo + int(next_u64() % std::uint64_t(hi - lo + 1));
    }

    /// Independent child stream for a tagged sub-task.
    Rng child(std::uint64_t tag) {
        // splitmix64 of (state draw, tag) keeps sibling streams decorrelated
        std::uint64_t x = next_u64() + 0x9e3779b97f4a7c15ULL * (tag + 1);
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return Rng(x ^ (x >> 31));
    }

   private:
    std::mt19937_64 gen_;
};

}  // namespace riesz
