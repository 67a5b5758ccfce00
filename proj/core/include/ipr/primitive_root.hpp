#pragma once

#include <cstdint>
#include <vector>

#include "ipr/bounds.hpp"
#include "ipr/factorization.hpp"
#include "ipr/natural.hpp"
#include "ipr/rng.hpp"

namespace ipr {

// Below this threshold the industrial generator factors p-1 completely.
inline constexpr std::uint64_t kIndustrialThreshold = 45171967;

struct RootCandidate {
    Natural p;
    Natural g;
    // Bound at the requested/solved B: the generator's own accounting,
    // conditional on the factorization guarantee below.
    ProbabilityBound success_bound;
    // Bound at the trial-division floor: unconditionally proven.
    ProbabilityBound certified_success_bound;
    // Bound at the rho average reach (B_eff = L^2): heuristic.
    ProbabilityBound advisory_success_bound;
    Natural order_lower_bound;
    Natural B_used;
    Natural Q_remaining;
    bool complete = false;
    Guarantee guarantee = Guarantee::Proven;
    SeedTrace seed_trace;
};

// The draw-and-assemble core: given a partial factorization of p-1, draws
// alpha_i per listed prime power (uniform on [2, p-2], at most
// 128*ceil(log2 p) draws per prime), forms a = prod alpha_i^((p-1)/q_i^e_i),
// and when a cofactor remains draws b with b^((p-1)/Q) != 1 and returns
// g = a * b^((p-1)/Q). Exposed so forced/truncated factorizations can be
// exercised directly. Pre: f.n == p-1; f.certified_bound >= 3 unless
// f is complete.
RootCandidate assemble_candidate(const Natural& p, const PartialFactorization& f,
                                 SeededRng& rng);

// Solves B for the requested failure eps, partially factors p-1 with the
// given strategy, and assembles. Pre: p odd prime >= 3 (probable), eps in
// (0,1).
RootCandidate probable_root(const Natural& p, double eps,
                            const FactorStrategy& strategy, SeededRng& rng);

// Fast calibration: B = ceil((log2 p)^2 * (log2 log2 p)^2) with rho
// factoring at the configured budget.
RootCandidate fast_root(const Natural& p, SeededRng& rng,
                        std::uint64_t rho_budget = std::uint64_t(1) << 20);

// Industrial calibration: below kIndustrialThreshold factors p-1 completely
// (trial division to (p-1)/2 + 1); otherwise B = max(ceil((log2 p)^5.298514),
// solve_bound(p, 2^-40)) so the reported bound is >= 1 - 2^-40 regardless
// of how the exponent constant behaves across sizes.
RootCandidate industrial_root(const Natural& p, SeededRng& rng,
                              std::uint64_t rho_budget = std::uint64_t(1) << 20);

Natural fast_bound(const Natural& p);        // ceil((log2 p)^2 (log2 log2 p)^2)
Natural industrial_bound(const Natural& p);  // the max() above, p >= threshold

// Requires a complete factorization of p-1.
bool is_primitive_root(const Natural& g, const Natural& p,
                       const std::vector<FactorPair>& p_minus_1);

// Smallest primitive root by ascending search (test oracle).
Natural deterministic_root(const Natural& p, const std::vector<FactorPair>& p_minus_1);

// Brute-force order (test oracle). Pre: n <= 2^24, gcd(g, n) == 1.
Natural multiplicative_order(const Natural& g, const Natural& n);

}  // namespace ipr
