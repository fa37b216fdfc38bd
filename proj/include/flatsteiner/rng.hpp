#pragma once

#include <cstdint>

namespace flatsteiner {

// SplitMix64. Used everywhere a seeded stream is needed so that results do
// not depend on the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

    // Deterministic sub-stream: mixes the tag into the current seed without
    // advancing this generator. Lets independent work units (samples,
    // restarts) draw from stable streams regardless of draw counts elsewhere.
    Rng fork(std::uint64_t tag) const {
        Rng r(state_ ^ (0xD1B54A32D192ED03ULL * (tag + 1)));
        r.next_u64();
        return r;
    }

private:
    std::uint64_t state_;
};

}  // namespace flatsteiner
