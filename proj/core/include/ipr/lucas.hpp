#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ipr/bounds.hpp"
#include "ipr/factorization.hpp"
#include "ipr/natural.hpp"
#include "ipr/primitive_root.hpp"
#include "ipr/rng.hpp"

namespace ipr {

struct CertEntry {
    Natural q;
    unsigned e;
};

// Witness that n is prime: a has order divisible by k = prod q^e, with
// n - 1 = k * cofactor and k^3 > n.
struct PrimalityCertificate {
    Natural n;
    Natural a;
    std::vector<CertEntry> prime_powers;  // ascending q
    Natural cofactor;                     // (n-1)/k; 1 when complete
    Natural k_value() const;
};

enum class LucasVerdict { Prime, ProbablyPrime, Composite, ProbablyComposite };

struct LucasOutcome {
    LucasVerdict verdict = LucasVerdict::ProbablyPrime;
    std::optional<PrimalityCertificate> certificate;  // Prime only
    // ProbablyPrime: failure_F(B, q) for the last composite cofactor q.
    // ProbablyComposite: the surviving probability P that n is prime.
    std::optional<ProbabilityBound> error_bound;
    std::optional<Natural> evidence;  // Composite: factor or witness value
    // "gcd_base_factor", "gcd_order_factor", "fermat_witness",
    // "strong_witness", "square_test_factor"; empty otherwise.
    std::string evidence_kind;
    Natural final_B;  // last refined bound (3 if never refined)
    Natural final_Q;  // unfactored part of n-1 at exit
    // Exact denominator of the surviving probability P = 1/p_denominator
    // (the product of every q whose draw landed in the q-th powers).
    Natural p_denominator;
    SeedTrace seed_trace;
};

// Probabilistic Lucas primality test. Strips prime powers q^e from n - 1
// while Q = (n-1)/k exceeds n^(2/3), accumulating a = prod alpha^((n-1)/q^e)
// and the exact probability P that n is prime given that every drawn alpha
// satisfied alpha^((n-1)/q) == 1. The bound B refines after each strip so
// failure_F(B, Q) == 4*eps; bound_override caps every refined B (it models
// a constrained factoring effort). Pre: n odd >= 3, eps in (0, 1).
LucasOutcome lucas_test(const Natural& n, double eps, SeededRng& rng,
                        const std::optional<Natural>& bound_override = std::nullopt,
                        std::uint64_t rho_budget = std::uint64_t(1) << 20);

enum class CertMode {
    Complete,        // cofactor == 1: a has order n-1
    Pocklington,     // k^2 > n: deterministic
    BlsConditional,  // n^(1/3) < k <= sqrt(n): deterministic only with the
                     // square test (strict mode)
};

struct VerifyResult {
    bool valid = false;
    CertMode mode = CertMode::BlsConditional;
    bool deterministic = false;
    std::string reason;  // first failed check when invalid
};

// Deterministic re-check of a certificate: product and k^3 > n shape, MR
// screens on each q, a^(n-1) == 1, and gcd(a^((n-1)/q) - 1, n) == 1 per q.
// strict additionally runs the BLS square test on BlsConditional
// certificates (refuting or upgrading them to deterministic).
VerifyResult verify_certificate(const PrimalityCertificate& cert, bool strict = false);

struct DhParams {
    Natural p;
    RootCandidate root;
    unsigned bits = 0;
    double eps = 0.0;
    unsigned mr_rounds = 0;
    SeedTrace seed_trace;
};

// bits-bit probable prime (MR rounds ceil(log2(1/eps)/2), so error <= eps)
// with a generator from the fast calibration. Pre: bits >= 8.
DhParams generate_dh_params(unsigned bits, double eps, SeededRng& rng);

}  // namespace ipr
