#pragma once

#include <cstdint>
#include <random>

#include "ipr/natural.hpp"

namespace ipr {

struct SeedTrace {
    std::uint64_t seed = 0;
    std::uint64_t draws = 0;
};

// Deterministic seeded source. mt19937_64 output is fixed by the standard,
// so identical seeds replay identically across platforms; all range
// reduction is rejection sampling on raw 64-bit words (never
// std::uniform_int_distribution, whose mapping is implementation-defined).
class SeededRng {
  public:
    explicit SeededRng(std::uint64_t seed) : seed_(seed), eng_(seed) {}

    std::uint64_t next_u64() {
        ++draws_;
        return eng_();
    }

    // Uniform in [0, n), n >= 1.
    Natural below(const Natural& n);

    // Uniform in [lo, hi] inclusive, lo <= hi.
    Natural in_range(const Natural& lo, const Natural& hi);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t draws() const { return draws_; }
    SeedTrace trace() const { return SeedTrace{seed_, draws_}; }

    // Worker seed derived from a master seed by counter (splitmix64 mix).
    static std::uint64_t derive(std::uint64_t master, std::uint64_t counter);

  private:
    std::uint64_t seed_;
    std::mt19937_64 eng_;
    std::uint64_t draws_ = 0;
};

}  // namespace ipr
