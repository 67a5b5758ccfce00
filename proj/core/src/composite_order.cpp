#include "ipr/composite_order.hpp"

#include <numeric>
#include <stdexcept>
#include <utility>

#include "ipr/rng.hpp"

namespace ipr {
namespace {

// Deterministic seed for internal factoring of lambda-sized quantities.
constexpr std::uint64_t kInternalSeed = 0x9d1f0c5b2a8e4473ULL;
constexpr std::size_t kDivisorWall = 1u << 16;
constexpr std::uint64_t kOpsWall = 10'000'000;

void validate(const std::vector<FactorPair>& fs) {
    Natural prev = 1;
    for (const FactorPair& f : fs) {
        if (f.prime <= prev) throw std::invalid_argument("factors must be ascending distinct primes");
        if (f.exponent == 0) throw std::invalid_argument("exponents must be >= 1");
        prev = f.prime;
    }
}

Natural pow_natural(const Natural& base, unsigned exp) {
    Natural out = 1;
    for (unsigned i = 0; i < exp; ++i) out *= base;
    return out;
}

Natural phi_prime_power(const Natural& p, unsigned e) {
    return (p - 1) * pow_natural(p, e - 1);
}

Natural lcm_natural(const Natural& a, const Natural& b) { return a / gcd(a, b) * b; }

// Divisors of the value with the given complete factorization, paired with
// their totients. Throws std::length_error past the divisor wall.
std::vector<std::pair<Natural, Natural>> divisors_with_phi(
    const std::vector<FactorPair>& fs) {
    std::vector<std::pair<Natural, Natural>> out{{Natural(1), Natural(1)}};
    for (const FactorPair& f : fs) {
        const std::size_t base_count = out.size();
        if (base_count * (f.exponent + 1) > kDivisorWall)
            throw std::length_error("divisor lattice exceeds cost wall");
        out.reserve(base_count * (f.exponent + 1));
        Natural q_pow = 1;
        Natural phi_pow = 1;
        for (unsigned j = 1; j <= f.exponent; ++j) {
            phi_pow = (j == 1) ? Natural(f.prime - 1) : Natural(phi_pow * f.prime);
            q_pow *= f.prime;
            for (std::size_t i = 0; i < base_count; ++i)
                out.emplace_back(out[i].first * q_pow, out[i].second * phi_pow);
        }
    }
    return out;
}

// Per-component (order, count) options restricted to orders dividing d.
std::vector<std::pair<Natural, Natural>> component_options(const FactorPair& f,
                                                           const Natural& d,
                                                           SeededRng& rng) {
    std::vector<std::pair<Natural, Natural>> out;
    if (f.prime == 2) {
        out.emplace_back(Natural(1), Natural(1));
        if (f.exponent == 1) return out;
        if (f.exponent == 2) {
            if (d % 2 == 0) out.emplace_back(Natural(2), Natural(1));
            return out;
        }
        // (Z/2^e)^* = C_2 x C_{2^(e-2)}: one element of order 1, three of
        // order 2, and 2^j of each order 2^j for 2 <= j <= e-2.
        if (d % 2 == 0) out.emplace_back(Natural(2), Natural(3));
        Natural two_j = 2;
        for (unsigned j = 2; j <= f.exponent - 2; ++j) {
            two_j *= 2;
            if (d % two_j == 0) out.emplace_back(two_j, two_j);
        }
        return out;
    }
    const Natural m = phi_prime_power(f.prime, f.exponent);
    const Natural g = gcd(d, m);
    std::vector<FactorPair> gf = factor_completely(g, rng);
    return divisors_with_phi(gf);
}

OrderCount count_of_order_impl(const std::vector<FactorPair>& n_factors,
                               const Natural& d, SeededRng& rng) {
    validate(n_factors);
    if (d < 1) throw std::invalid_argument("order must be >= 1");
    OrderCount out;
    const Natural lambda = carmichael_lambda(n_factors);
    if (lambda % d != 0) {
        out.count = 0;
        return out;
    }
    out.order_divides_lambda = true;

    std::map<Natural, Natural> acc{{Natural(1), Natural(1)}};
    std::uint64_t ops = 0;
    for (const FactorPair& f : n_factors) {
        const auto options = component_options(f, d, rng);
        std::map<Natural, Natural> next;
        for (const auto& [l, ways] : acc) {
            for (const auto& [o, cnt] : options) {
                if (++ops > kOpsWall) throw std::length_error("order lattice exceeds cost wall");
                next[lcm_natural(l, o)] += ways * cnt;
            }
        }
        acc = std::move(next);
    }
    auto it = acc.find(d);
    out.count = (it == acc.end()) ? Natural(0) : it->second;
    return out;
}

}  // namespace

Natural euler_phi(const std::vector<FactorPair>& n_factors) {
    validate(n_factors);
    Natural out = 1;
    for (const FactorPair& f : n_factors) out *= phi_prime_power(f.prime, f.exponent);
    return out;
}

Natural carmichael_lambda(const std::vector<FactorPair>& n_factors) {
    validate(n_factors);
    Natural out = 1;
    for (const FactorPair& f : n_factors) {
        Natural comp;
        if (f.prime == 2) {
            if (f.exponent == 1) comp = 1;
            else if (f.exponent == 2) comp = 2;
            else comp = pow_natural(Natural(2), f.exponent - 2);
        } else {
            comp = phi_prime_power(f.prime, f.exponent);
        }
        out = lcm_natural(out, comp);
    }
    return out;
}

OrderCount count_of_order(const std::vector<FactorPair>& n_factors, const Natural& d) {
    SeededRng rng(kInternalSeed);
    return count_of_order_impl(n_factors, d, rng);
}

std::map<Natural, Natural> order_spectrum(const std::vector<FactorPair>& n_factors) {
    validate(n_factors);
    SeededRng rng(kInternalSeed);
    const Natural lambda = carmichael_lambda(n_factors);
    std::vector<FactorPair> lf = factor_completely(lambda, rng);
    std::map<Natural, Natural> out;
    for (const auto& [d, phi_d] : divisors_with_phi(lf)) {
        (void)phi_d;
        out[d] = count_of_order_impl(n_factors, d, rng).count;
    }
    return out;
}

Natural count_order_divisible_by(const std::vector<FactorPair>& n_factors,
                                 const Natural& q) {
    validate(n_factors);
    SeededRng rng(kInternalSeed);
    if (q < 2 || !miller_rabin(q, kMrRounds, rng).probable_prime)
        throw std::invalid_argument("q must be prime");
    const Natural phi = euler_phi(n_factors);
    Natural q_pow = 1;
    Natural rest = phi;
    while (rest % q == 0) {
        rest /= q;
        q_pow *= q;
    }
    return phi - phi / q_pow;
}

std::map<Natural, Natural> brute_spectrum(const Natural& n) {
    if (n < 2 || n > (Natural(1) << 20)) throw std::invalid_argument("brute oracle needs 2 <= n <= 2^20");
    const std::uint64_t m = to_u64(n);
    std::map<Natural, Natural> out;
    for (std::uint64_t a = 1; a < m; ++a) {
        if (std::gcd(a, m) != 1) continue;
        std::uint64_t x = a;
        std::uint64_t order = 1;
        while (x != 1) {
            x = (x * a) % m;
            ++order;
        }
        ++out[Natural(order)];
    }
    return out;
}

}  // namespace ipr
