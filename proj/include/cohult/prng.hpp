#pragma once

#include <cstdint>
#include <random>

#include "cohult/errors.hpp"

namespace cohult {

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

// Deterministic random source.  Bounded draws are implemented by rejection
// sampling on the raw 64-bit stream instead of std::uniform_int_distribution,
// whose output is not pinned down by the standard and varies across library
// implementations.  All sampled test data must be reproducible from the seed
// alone, on any toolchain.
class Prng {
public:
    explicit Prng(std::uint64_t seed = kDefaultSeed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform draw from [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw PreconditionError("Prng::below(0)");
        if ((bound & (bound - 1)) == 0) return engine_() & (bound - 1);
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        for (;;) {
            std::uint64_t raw = engine_();
            if (raw < limit) return raw % bound;
        }
    }

    // Uniform draw from [lo, hi] inclusive.
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        if (lo > hi) throw PreconditionError("Prng::range: empty interval");
        return lo + static_cast<std::int64_t>(
                        below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    bool coin() { return (engine_() & 1) != 0; }

private:
    std::mt19937_64 engine_;
};

}  // namespace cohult
