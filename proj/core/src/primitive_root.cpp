#include "ipr/primitive_root.hpp"

#include <gmp.h>
#include <mpfr.h>

#include <stdexcept>

namespace ipr {
namespace {

constexpr mpfr_prec_t kCalibPrec = 128;

Natural ceil_to_natural(mpfr_t v) {
    mpfr_ceil(v, v);
    mpz_t z;
    mpz_init(z);
    mpfr_get_z(z, v, MPFR_RNDU);
    Natural out(z);
    mpz_clear(z);
    return out;
}

// Draws alpha on [2, p-2] until pred holds, capped at 128*ceil(log2 p).
template <typename Pred>
Natural draw_until(const Natural& p, SeededRng& rng, Pred&& pred) {
    const std::uint64_t cap = 128 * static_cast<std::uint64_t>(bit_length(p));
    for (std::uint64_t i = 0; i < cap; ++i) {
        Natural alpha = rng.in_range(Natural(2), p - 2);
        if (pred(alpha)) return alpha;
    }
    throw std::runtime_error("draw cap exhausted; p is likely not prime");
}

Natural pow_natural(Natural base, unsigned exp) {
    Natural out = 1;
    while (exp--) out *= base;
    return out;
}

}  // namespace

RootCandidate assemble_candidate(const Natural& p, const PartialFactorization& f,
                                 SeededRng& rng) {
    if (p < 3 || (p & 1) == 0) throw std::invalid_argument("p must be odd and >= 3");
    if (f.n != p - 1) throw std::invalid_argument("factorization is not of p-1");
    if (!f.complete() && f.certified_bound < 3)
        throw std::invalid_argument("certified floor below 3 with incomplete factorization");

    if (p == 3) {
        // [2, p-2] is empty; 2 is the unique primitive root.
        RootCandidate out;
        out.p = p;
        out.g = 2;
        out.success_bound = ProbabilityBound::exact(ProbabilityBound::Kind::SuccessLower, 1);
        out.certified_success_bound = out.success_bound;
        out.advisory_success_bound = out.success_bound;
        out.order_lower_bound = 2;
        out.B_used = f.bound_B;
        out.Q_remaining = 1;
        out.complete = true;
        out.guarantee = f.guarantee;
        out.seed_trace = rng.trace();
        return out;
    }

    const Natural pm1 = p - 1;
    Natural a = 1;
    for (const FactorPair& fp : f.factors) {
        const Natural probe_exp = pm1 / fp.prime;
        Natural alpha = draw_until(p, rng, [&](const Natural& c) {
            return modexp(c, probe_exp, p) != 1;
        });
        const Natural build_exp = pm1 / pow_natural(fp.prime, fp.exponent);
        a = (a * modexp(alpha, build_exp, p)) % p;
    }

    RootCandidate out;
    out.p = p;
    out.B_used = f.bound_B;
    out.Q_remaining = f.cofactor;
    out.complete = f.complete();
    out.guarantee = f.guarantee;

    if (out.complete) {
        out.g = a;
        out.success_bound = ProbabilityBound::exact(ProbabilityBound::Kind::SuccessLower, 1);
        out.certified_success_bound = out.success_bound;
        out.advisory_success_bound = out.success_bound;
        out.order_lower_bound = pm1;
    } else {
        const Natural& Q = f.cofactor;
        const Natural build_exp = pm1 / Q;
        Natural b = draw_until(p, rng, [&](const Natural& c) {
            return modexp(c, build_exp, p) != 1;
        });
        out.g = (a * modexp(b, build_exp, p)) % p;
        out.success_bound = success_lower_bound(f.bound_B, Q);
        out.certified_success_bound = success_lower_bound(f.certified_bound, Q);
        out.advisory_success_bound = success_lower_bound(f.advisory_bound, Q);
        out.order_lower_bound = build_exp * f.bound_B;
    }
    out.seed_trace = rng.trace();
    return out;
}

RootCandidate probable_root(const Natural& p, double eps,
                            const FactorStrategy& strategy, SeededRng& rng) {
    if (p < 3 || (p & 1) == 0) throw std::invalid_argument("p must be odd and >= 3");
    const Natural B = solve_bound(p, eps);
    PartialFactorization f = partial_factor(p - 1, B, strategy, rng);
    return assemble_candidate(p, f, rng);
}

Natural fast_bound(const Natural& p) {
    if (p < 5) return Natural(3);
    mpfr_t lg, lglg;
    mpfr_inits2(kCalibPrec, lg, lglg, (mpfr_ptr) 0);
    mpfr_set_z(lg, p.backend().data(), MPFR_RNDU);
    mpfr_log2(lg, lg, MPFR_RNDU);
    mpfr_log2(lglg, lg, MPFR_RNDU);
    mpfr_sqr(lg, lg, MPFR_RNDU);
    mpfr_sqr(lglg, lglg, MPFR_RNDU);
    mpfr_mul(lg, lg, lglg, MPFR_RNDU);
    Natural out = ceil_to_natural(lg);
    mpfr_clears(lg, lglg, (mpfr_ptr) 0);
    if (out < 3) out = 3;
    return out;
}

Natural industrial_bound(const Natural& p) {
    mpfr_t lg, alpha;
    mpfr_inits2(kCalibPrec, lg, alpha, (mpfr_ptr) 0);
    mpfr_set_z(lg, p.backend().data(), MPFR_RNDU);
    mpfr_log2(lg, lg, MPFR_RNDU);
    mpfr_set_str(alpha, "5.298514", 10, MPFR_RNDU);
    mpfr_pow(lg, lg, alpha, MPFR_RNDU);
    Natural powered = ceil_to_natural(lg);
    mpfr_clears(lg, alpha, (mpfr_ptr) 0);
    // The exponent constant alone undershoots 1 - 2^-40 at common sizes, so
    // take the solved bound as a floor.
    Natural solved = solve_bound(p, std::ldexp(1.0, -40));
    return powered > solved ? powered : solved;
}

RootCandidate fast_root(const Natural& p, SeededRng& rng, std::uint64_t rho_budget) {
    if (p < 3 || (p & 1) == 0) throw std::invalid_argument("p must be odd and >= 3");
    const Natural B = fast_bound(p);
    PartialFactorization f =
        partial_factor(p - 1, B, FactorStrategy::rho(rho_budget), rng);
    return assemble_candidate(p, f, rng);
}

RootCandidate industrial_root(const Natural& p, SeededRng& rng,
                              std::uint64_t rho_budget) {
    if (p < 3 || (p & 1) == 0) throw std::invalid_argument("p must be odd and >= 3");
    if (p < kIndustrialThreshold) {
        const Natural B = (p - 1) / 2 + 1;
        PartialFactorization f =
            partial_factor(p - 1, B, FactorStrategy::trial(), rng);
        return assemble_candidate(p, f, rng);
    }
    const Natural B = industrial_bound(p);
    PartialFactorization f =
        partial_factor(p - 1, B, FactorStrategy::rho(rho_budget), rng);
    return assemble_candidate(p, f, rng);
}

bool is_primitive_root(const Natural& g, const Natural& p,
                       const std::vector<FactorPair>& p_minus_1) {
    if (p < 3) throw std::invalid_argument("p must be >= 3");
    if (g % p == 0) return false;
    const Natural pm1 = p - 1;
    for (const FactorPair& fp : p_minus_1) {
        if (modexp(g, pm1 / fp.prime, p) == 1) return false;
    }
    return true;
}

Natural deterministic_root(const Natural& p, const std::vector<FactorPair>& p_minus_1) {
    for (Natural g = 2; g < p; ++g) {
        if (is_primitive_root(g, p, p_minus_1)) return g;
    }
    throw std::logic_error("no primitive root found; p is not prime");
}

Natural multiplicative_order(const Natural& g, const Natural& n) {
    if (n < 2 || n > (Natural(1) << 24)) throw std::invalid_argument("order oracle needs 2 <= n <= 2^24");
    if (gcd(g % n, n) != 1) throw std::invalid_argument("g must be invertible mod n");
    const std::uint64_t m = to_u64(n);
    const std::uint64_t b = to_u64(g % n);
    std::uint64_t x = b % m;
    Natural order = 1;
    while (x != 1) {
        x = (x * b) % m;
        ++order;
    }
    return order;
}

}  // namespace ipr
