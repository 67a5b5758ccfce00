#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ipr/natural.hpp"
#include "ipr/rng.hpp"

namespace ipr {

struct FactorPair {
    Natural prime;      // probable prime at kMrRounds when not found by trial division
    unsigned exponent;  // full multiplicity in n
};

enum class Guarantee { Proven, Heuristic };

// Miller-Rabin rounds used for every internal primality screen; error
// probability <= 4^-64 per accepted prime.
inline constexpr unsigned kMrRounds = 64;

struct PartialFactorization {
    Natural n;
    std::vector<FactorPair> factors;  // ascending primes
    Natural cofactor;                 // 1, or composite with no prime factor < certified_bound
    Natural bound_B;                  // requested bound
    Natural certified_bound;          // trial division completed below this
    Natural advisory_bound;           // rho average reach: max(certified, L^2) for Heuristic
    Guarantee guarantee = Guarantee::Proven;
    bool complete() const { return cofactor == 1; }
};

struct FactorStrategy {
    enum class Kind { TrialProven, RhoHeuristic };
    Kind kind = Kind::RhoHeuristic;
    std::uint64_t rho_budget = std::uint64_t(1) << 20;  // iterations per factor
    std::uint64_t trial_wall = std::uint64_t(1) << 26;  // TrialProven cost wall

    static FactorStrategy trial() { return {Kind::TrialProven, 0, std::uint64_t(1) << 26}; }
    static FactorStrategy rho(std::uint64_t budget = std::uint64_t(1) << 20) {
        return {Kind::RhoHeuristic, budget, std::uint64_t(1) << 26};
    }
};

// One strong-pseudoprime round. Pre: n odd >= 3, 1 <= base < n.
bool strong_probable_prime(const Natural& n, const Natural& base);

struct MrOutcome {
    bool probable_prime;
    std::optional<Natural> witness;  // first failing base when composite
};

// rounds random bases drawn from rng. Handles n == 2 (prime) and even or
// tiny n (composite) before the strong rounds.
MrOutcome miller_rabin(const Natural& n, unsigned rounds, SeededRng& rng);

// Fixed base list; used where tests pin specific witnesses.
MrOutcome miller_rabin_bases(const Natural& n, const std::vector<Natural>& bases);

bool probable_prime_64(const Natural& n, SeededRng& rng);

// Brent-cycle Pollard rho with random offset c (redrawn up to 8 times
// within the shared iteration budget). Returns a nontrivial factor (never
// 1 or n), or nullopt when the budget exhausts. Pre: n odd composite > 1
// that is not a perfect power of a prime the caller wants intact.
std::optional<Natural> rho_split(const Natural& n, std::uint64_t budget, SeededRng& rng);

// Factors n into ascending prime powers times a cofactor:
//   TrialProven: complete trial division below B (error if B > trial_wall),
//     then a probable-prime promotion of the cofactor.
//   RhoHeuristic: trial division below min(B, 2^16), then recursive Brent
//     rho with a per-factor budget; perfect-power check precedes each rho
//     call; every found piece is screened at kMrRounds and composite pieces
//     are split further until the budget gives out.
// Pre: n >= 1, B >= 2.
PartialFactorization partial_factor(const Natural& n, const Natural& B,
                                    const FactorStrategy& strategy, SeededRng& rng);

// Convenience: factor to completion (trial division then unbounded rho
// rounds); throws if n resists (practically unreachable for the sizes the
// callers use). Used where a full factorization is a precondition.
std::vector<FactorPair> factor_completely(const Natural& n, SeededRng& rng);

}  // namespace ipr
