#include "ipr/factorization.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "ipr/sieve.hpp"

namespace ipr {

bool strong_probable_prime(const Natural& n, const Natural& base) {
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("strong_probable_prime: n must be odd and >= 3");
    Natural b = base % n;
    if (b == 0) return false;
    Natural d = n - 1;
    unsigned s = 0;
    while (d % 2 == 0) { d /= 2; ++s; }
    Natural x = modexp(b, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned i = 1; i < s; ++i) {
        x = (x * x) % n;
        if (x == n - 1) return true;
        if (x == 1) return false;  // nontrivial square root of 1
    }
    return false;
}

MrOutcome miller_rabin_bases(const Natural& n, const std::vector<Natural>& bases) {
    if (n == 2) return {true, std::nullopt};
    if (n < 2 || n % 2 == 0) return {false, std::nullopt};
    if (n == 3) return {true, std::nullopt};
    for (const Natural& b : bases) {
        if (!strong_probable_prime(n, b)) return {false, b};
    }
    return {true, std::nullopt};
}

MrOutcome miller_rabin(const Natural& n, unsigned rounds, SeededRng& rng) {
    if (n == 2) return {true, std::nullopt};
    if (n < 2 || n % 2 == 0) return {false, std::nullopt};
    if (n == 3) return {true, std::nullopt};
    for (unsigned i = 0; i < rounds; ++i) {
        Natural b = rng.in_range(2, n - 2);
        if (!strong_probable_prime(n, b)) return {false, b};
    }
    return {true, std::nullopt};
}

bool probable_prime_64(const Natural& n, SeededRng& rng) {
    return miller_rabin(n, kMrRounds, rng).probable_prime;
}

std::optional<Natural> rho_split(const Natural& n, std::uint64_t budget, SeededRng& rng) {
    if (n <= 3) throw std::invalid_argument("rho_split: n must exceed 3");
    if (n % 2 == 0) return Natural(2);
    std::uint64_t used = 0;
    constexpr unsigned kMaxOffsets = 8;
    constexpr std::uint64_t kBatch = 128;
    for (unsigned attempt = 0; attempt < kMaxOffsets && used < budget; ++attempt) {
        Natural c = rng.in_range(1, n - 1);
        if (c == n - 2) c = 1;  // x^2 - 2 degenerates on cyclic orbits
        Natural y = rng.in_range(2, n - 2);
        Natural x, ys, q = 1, g = 1;
        std::uint64_t r = 1;
        while (g == 1 && used < budget) {
            x = y;
            for (std::uint64_t i = 0; i < r && used < budget; ++i) {
                y = (y * y + c) % n;
                ++used;
            }
            std::uint64_t k = 0;
            while (k < r && g == 1 && used < budget) {
                ys = y;
                std::uint64_t lim = std::min(kBatch, r - k);
                for (std::uint64_t i = 0; i < lim && used < budget; ++i) {
                    y = (y * y + c) % n;
                    ++used;
                    Natural diff = x > y ? x - y : y - x;
                    if (diff != 0) q = (q * diff) % n;
                }
                // q == 0 means the batch product absorbed every factor of n:
                // gcd(0, n) == n routes that through the replay below.
                g = gcd(q, n);
                k += lim;
            }
            r *= 2;
        }
        if (g == n) {
            // Batch overshot: replay the last block one step at a time.
            g = 1;
            while (g == 1) {
                ys = (ys * ys + c) % n;
                Natural diff = x > ys ? x - ys : ys - x;
                if (diff == 0) { g = n; break; }
                g = gcd(diff, n);
            }
        }
        if (g > 1 && g < n) return g;
        // g == n (cycle collapse) or budget spent: next offset if any budget left.
    }
    return std::nullopt;
}

namespace {

void strip_prime(Natural& remaining, const Natural& q, std::vector<FactorPair>& out) {
    unsigned e = 0;
    while (remaining % q == 0) {
        remaining /= q;
        ++e;
    }
    if (e > 0) out.push_back(FactorPair{q, e});
}

// Smallest prime k with x == m^k exactly, if any.
std::optional<std::pair<Natural, unsigned>> perfect_power(const Natural& x) {
    std::uint64_t bits = bit_length(x);
    auto small = primes_below(static_cast<std::uint32_t>(bits + 1));
    for (std::uint32_t k : small) {
        if ((std::uint64_t)k > bits) break;
        IntegerRoot r = integer_root(x, k);
        if (r.exact && r.root > 1) return std::make_pair(r.root, k);
    }
    return std::nullopt;
}

// Recursively reduces x to probable primes; pieces that resist the rho
// budget land in unsplit.
void resolve_piece(const Natural& x, std::uint64_t budget, SeededRng& rng,
                   std::set<Natural>& primes, std::vector<Natural>& unsplit) {
    if (x == 1) return;
    if (miller_rabin(x, kMrRounds, rng).probable_prime) {
        primes.insert(x);
        return;
    }
    if (auto pw = perfect_power(x)) {
        resolve_piece(pw->first, budget, rng, primes, unsplit);
        return;
    }
    auto f = rho_split(x, budget, rng);
    if (!f) {
        unsplit.push_back(x);
        return;
    }
    resolve_piece(*f, budget, rng, primes, unsplit);
    resolve_piece(x / *f, budget, rng, primes, unsplit);
}

}  // namespace

PartialFactorization partial_factor(const Natural& n, const Natural& B,
                                    const FactorStrategy& strategy, SeededRng& rng) {
    if (n < 1) throw std::invalid_argument("partial_factor: n must be >= 1");
    if (B < 2) throw std::invalid_argument("partial_factor: B must be >= 2");

    PartialFactorization out;
    out.n = n;
    out.bound_B = B;

    const bool trial_mode = strategy.kind == FactorStrategy::Kind::TrialProven;
    Natural trial_to = B;
    if (trial_mode) {
        if (B > Natural(strategy.trial_wall))
            throw std::invalid_argument("partial_factor: TrialProven bound exceeds cost wall");
        out.guarantee = Guarantee::Proven;
    } else {
        trial_to = std::min(B, Natural(std::uint64_t(1) << 16));
        out.guarantee = Guarantee::Heuristic;
    }
    out.certified_bound = trial_to;

    Natural remaining = n;
    bool closed_by_trial = false;
    if (remaining > 1) {
        thread_local PrimeStream ps;  // sieving is the dominant cost on small n
        ps.rewind();
        for (;;) {
            std::uint64_t p = ps.next();
            if (Natural(p) >= trial_to) break;
            if (Natural(p) * Natural(p) > remaining) {
                // Residue is prime (fully trial-divided below its root) or 1.
                if (remaining > 1) {
                    out.factors.push_back(FactorPair{remaining, 1});
                    remaining = 1;
                }
                closed_by_trial = true;
                break;
            }
            if (remaining % p == 0) strip_prime(remaining, Natural(p), out.factors);
        }
    }

    if (!closed_by_trial && remaining > 1) {
        if (miller_rabin(remaining, kMrRounds, rng).probable_prime) {
            out.factors.push_back(FactorPair{remaining, 1});  // promotion
            remaining = 1;
        } else if (!trial_mode) {
            std::set<Natural> primes;
            std::vector<Natural> unsplit;
            resolve_piece(remaining, strategy.rho_budget, rng, primes, unsplit);
            for (const Natural& q : primes) strip_prime(remaining, q, out.factors);
        }
    }
    out.cofactor = remaining;

    if (trial_mode) {
        out.advisory_bound = out.certified_bound;
    } else {
        Natural reach = Natural(strategy.rho_budget) * Natural(strategy.rho_budget);
        out.advisory_bound = std::max(out.certified_bound, reach);
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const FactorPair& a, const FactorPair& b) { return a.prime < b.prime; });
    return out;
}

std::vector<FactorPair> factor_completely(const Natural& n, SeededRng& rng) {
    if (n < 1) throw std::invalid_argument("factor_completely: n must be >= 1");
    // Generous fixed budget, escalated a few times before giving up.
    for (std::uint64_t budget = std::uint64_t(1) << 22; budget <= (std::uint64_t(1) << 28);
         budget <<= 2) {
        auto f = partial_factor(n, Natural(std::uint64_t(1) << 16),
                                FactorStrategy::rho(budget), rng);
        if (f.complete()) return f.factors;
    }
    throw std::runtime_error("factor_completely: cofactor resisted the rho budget");
}

}  // namespace ipr
