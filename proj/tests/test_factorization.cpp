#include "doctest.h"

#include <ipr/factorization.hpp>
#include <ipr/sieve.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <vector>

using namespace ipr;

namespace {

// Smallest-prime-factor table; spf[0] = spf[1] = 0.
std::vector<std::uint32_t> spf_table(std::uint32_t n) {
    std::vector<std::uint32_t> spf(n + 1, 0);
    for (std::uint32_t i = 2; i <= n; ++i) {
        if (spf[i] == 0)
            for (std::uint64_t j = i; j <= n; j += i)
                if (spf[j] == 0) spf[j] = i;
    }
    return spf;
}

std::vector<FactorPair> oracle_factor(std::uint64_t n, const std::vector<std::uint32_t>& spf) {
    std::vector<FactorPair> out;
    while (n > 1) {
        std::uint32_t p = spf[n];
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.push_back({Natural(p), e});
    }
    return out;
}

Natural reconstruct(const PartialFactorization& f) {
    Natural prod = 1;
    for (const auto& fp : f.factors)
        for (unsigned i = 0; i < fp.exponent; ++i) prod *= fp.prime;
    return prod * f.cofactor;
}

bool ascending_distinct(const std::vector<FactorPair>& fs) {
    for (std::size_t i = 0; i + 1 < fs.size(); ++i)
        if (!(fs[i].prime < fs[i + 1].prime)) return false;
    return true;
}

}  // namespace

TEST_CASE("strong pseudoprimes are caught: pinned bases") {
    // 2047 = 23 * 89 passes base 2 but not base 3.
    CHECK(strong_probable_prime(2047, 2));
    CHECK_FALSE(strong_probable_prime(2047, 3));
    auto r = miller_rabin_bases(2047, {Natural(2), Natural(3)});
    CHECK_FALSE(r.probable_prime);
    REQUIRE(r.witness.has_value());
    CHECK(*r.witness == 3);
    CHECK(miller_rabin_bases(2047, {Natural(2)}).probable_prime);
}

TEST_CASE("miller_rabin verdicts") {
    SeededRng rng(101);
    CHECK(miller_rabin(2, 64, rng).probable_prime);
    CHECK(miller_rabin(3, 64, rng).probable_prime);
    CHECK_FALSE(miller_rabin(1, 64, rng).probable_prime);
    CHECK_FALSE(miller_rabin(4, 64, rng).probable_prime);
    CHECK_FALSE(miller_rabin(2047, 64, rng).probable_prime);
    CHECK_FALSE(miller_rabin(8051, 64, rng).probable_prime);     // 83 * 97
    CHECK_FALSE(miller_rabin(10403, 64, rng).probable_prime);    // 101 * 103
    CHECK(miller_rabin(1000003, 64, rng).probable_prime);
    Natural p = (Natural(1) << 127) - 1;
    CHECK(miller_rabin(p, 64, rng).probable_prime);
    CHECK_FALSE(miller_rabin(p * p, 64, rng).probable_prime);
    auto c = miller_rabin(Natural("340282366920938463463374607431768211455"), 64, rng);
    CHECK_FALSE(c.probable_prime);
    CHECK(c.witness.has_value());
    // Carmichael numbers have witnesses at three quarters of the bases.
    CHECK_FALSE(miller_rabin(561, 64, rng).probable_prime);
    CHECK_FALSE(miller_rabin(1729, 64, rng).probable_prime);
}

TEST_CASE("probable_prime_64 agrees with a sieve below 2*10^4") {
    auto spf = spf_table(20000);
    SeededRng rng(7);
    for (std::uint32_t n = 2; n <= 20000; ++n)
        CHECK(probable_prime_64(n, rng) == (spf[n] == n));
}

TEST_CASE("rho_split returns a nontrivial divisor") {
    SeededRng rng(5);
    std::vector<std::pair<Natural, Natural>> semiprimes = {
        {7, 13},
        {1451, 1931},
        {1000003, 999983},
        {Natural("2147483647"), Natural("2147483629")},
    };
    for (const auto& [p, q] : semiprimes) {
        Natural n = p * q;
        auto f = rho_split(n, std::uint64_t(1) << 22, rng);
        REQUIRE(f.has_value());
        CHECK(*f > 1);
        CHECK(*f < n);
        CHECK(n % *f == 0);
    }
    // A tiny budget on a hard semiprime gives up rather than lying.
    Natural hard = (Natural("1000000000000000003") * Natural("1000000000000000009"));
    CHECK_FALSE(rho_split(hard, 64, rng).has_value());
}

TEST_CASE("partial_factor rejects bad inputs") {
    SeededRng rng(1);
    CHECK_THROWS_AS(partial_factor(0, 10, FactorStrategy::trial(), rng),
                    std::invalid_argument);
    CHECK_THROWS_AS(partial_factor(10, 1, FactorStrategy::trial(), rng),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        partial_factor(10, (Natural(1) << 26) + 1, FactorStrategy::trial(), rng),
        std::invalid_argument);
}

TEST_CASE("bounded trial factorization of 37690903212") {
    SeededRng rng(1);
    auto f = partial_factor(Natural("37690903212"), 1450, FactorStrategy::trial(), rng);
    REQUIRE(f.factors.size() == 4);
    CHECK(f.factors[0].prime == 2);
    CHECK(f.factors[0].exponent == 2);
    CHECK(f.factors[1].prime == 3);
    CHECK(f.factors[1].exponent == 1);
    CHECK(f.factors[2].prime == 19);
    CHECK(f.factors[3].prime == 59);
    CHECK(f.cofactor == Natural("2801881"));  // 1451 * 1931, both above the bound
    CHECK_FALSE(f.complete());
    CHECK(f.guarantee == Guarantee::Proven);
    CHECK(f.certified_bound == 1450);
    CHECK(f.bound_B == 1450);
    CHECK(reconstruct(f) == Natural("37690903212"));
}

TEST_CASE("rho strategy finishes 37690903212") {
    SeededRng rng(2);
    auto f = partial_factor(Natural("37690903212"), 1450, FactorStrategy::rho(), rng);
    CHECK(f.complete());
    CHECK(f.guarantee == Guarantee::Heuristic);
    CHECK(reconstruct(f) == Natural("37690903212"));
    bool saw1451 = false, saw1931 = false;
    for (const auto& fp : f.factors) {
        saw1451 |= (fp.prime == 1451);
        saw1931 |= (fp.prime == 1931);
    }
    CHECK(saw1451);
    CHECK(saw1931);
    CHECK(f.advisory_bound == Natural(std::uint64_t(1) << 20) * (std::uint64_t(1) << 20));
}

TEST_CASE("perfect prime powers are recognized before rho") {
    SeededRng rng(3);
    Natural p = 1000003;
    auto f = partial_factor(p * p, 3, FactorStrategy::rho(), rng);
    CHECK(f.complete());
    REQUIRE(f.factors.size() == 1);
    CHECK(f.factors[0].prime == p);
    CHECK(f.factors[0].exponent == 2);
    auto g = partial_factor(p * p * p, 3, FactorStrategy::rho(), rng);
    CHECK(g.complete());
    REQUIRE(g.factors.size() == 1);
    CHECK(g.factors[0].exponent == 3);
}

TEST_CASE("trial factorization matches the sieve oracle up to 10^6") {
    const std::uint32_t kTop = 1000000;
    const std::uint32_t kB = 1000;
    auto spf = spf_table(kTop);
    const unsigned n_threads = std::max(2u, std::thread::hardware_concurrency());
    std::vector<std::uint64_t> bad(n_threads, 0);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) {
        pool.emplace_back([&, t] {
            SeededRng rng(900 + t);
            for (std::uint32_t n = 1 + t; n <= kTop; n += n_threads) {
                auto f = partial_factor(n, kB, FactorStrategy::trial(), rng);
                // Below 1000^2 the residue left after trial division is prime,
                // so the factorization must close.
                if (!f.complete() || reconstruct(f) != n ||
                    !ascending_distinct(f.factors)) {
                    ++bad[t];
                    continue;
                }
                auto oracle = oracle_factor(n, spf);
                std::sort(oracle.begin(), oracle.end(),
                          [](const FactorPair& a, const FactorPair& b) {
                              return a.prime < b.prime;
                          });
                if (oracle.size() != f.factors.size()) {
                    ++bad[t];
                    continue;
                }
                for (std::size_t i = 0; i < oracle.size(); ++i)
                    if (oracle[i].prime != f.factors[i].prime ||
                        oracle[i].exponent != f.factors[i].exponent)
                        ++bad[t];
            }
        });
    }
    for (auto& th : pool) th.join();
    CHECK(std::accumulate(bad.begin(), bad.end(), std::uint64_t(0)) == 0);
}

TEST_CASE("bounded trial division is exact below the bound for mixed bounds") {
    const std::uint32_t kTop = 100000;
    auto spf = spf_table(kTop);
    const std::vector<std::uint32_t> bounds = {2, 3, 5, 17, 100, 256, 997};
    const unsigned n_threads = std::max(2u, std::thread::hardware_concurrency());
    std::vector<std::uint64_t> bad(n_threads, 0);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) {
        pool.emplace_back([&, t] {
            SeededRng rng(3100 + t);
            for (std::uint32_t n = 1 + t; n <= kTop; n += n_threads) {
                for (std::uint32_t B : bounds) {
                    auto f = partial_factor(n, B, FactorStrategy::trial(), rng);
                    bool ok = reconstruct(f) == n && ascending_distinct(f.factors) &&
                              f.guarantee == Guarantee::Proven && f.certified_bound == B;
                    // Listed primes below B carry their full multiplicity;
                    // anything else got there by closure or promotion and is
                    // genuinely prime with the oracle's exponent.
                    auto oracle = oracle_factor(n, spf);
                    for (const auto& fp : f.factors) {
                        bool found = false;
                        for (const auto& op : oracle)
                            if (op.prime == fp.prime) {
                                found = true;
                                ok &= (op.exponent == fp.exponent);
                            }
                        ok &= found;
                    }
                    for (const auto& op : oracle) {
                        if (op.prime >= B) continue;
                        bool listed = false;
                        for (const auto& fp : f.factors)
                            listed |= (fp.prime == op.prime && fp.exponent == op.exponent);
                        ok &= listed;
                    }
                    // The cofactor keeps no prime below the certified bound.
                    if (f.cofactor > 1) ok &= (Natural(spf[to_u64(f.cofactor)]) >= B);
                    if (!ok) ++bad[t];
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    CHECK(std::accumulate(bad.begin(), bad.end(), std::uint64_t(0)) == 0);
}

TEST_CASE("rho strategy fuzz: reconstruction and screened factors") {
    SeededRng rng(77);
    for (int rep = 0; rep < 1500; ++rep) {
        Natural n = rng.below((Natural(1) << 62) - 2) + 2;
        auto f = partial_factor(n, 65536, FactorStrategy::rho(1u << 18), rng);
        CHECK(reconstruct(f) == n);
        CHECK(ascending_distinct(f.factors));
        CHECK(f.guarantee == Guarantee::Heuristic);
        for (const auto& fp : f.factors) {
            SeededRng screen(rep);
            CHECK(miller_rabin(fp.prime, 16, screen).probable_prime);
        }
    }
    // Wider inputs with a starved budget must still reconstruct.
    for (int rep = 0; rep < 60; ++rep) {
        Natural n = rng.below(Natural(1) << 128) + 2;
        auto f = partial_factor(n, 65536, FactorStrategy::rho(1u << 12), rng);
        CHECK(reconstruct(f) == n);
        CHECK(ascending_distinct(f.factors));
    }
}

TEST_CASE("factor_completely recovers planted factorizations") {
    SeededRng rng(31);
    auto fs = factor_completely(Natural("37690903213"), rng);
    REQUIRE(fs.size() == 3);
    CHECK(fs[0].prime == 229);
    CHECK(fs[1].prime == 2243);
    CHECK(fs[2].prime == 73379);
    for (const auto& f : fs) CHECK(f.exponent == 1);

    Natural n = (Natural(1) << 10) * 243 * 1451 * 1451 * 1931;
    auto gs = factor_completely(n, rng);
    REQUIRE(gs.size() == 4);
    CHECK(gs[0].prime == 2);
    CHECK(gs[0].exponent == 10);
    CHECK(gs[1].prime == 3);
    CHECK(gs[1].exponent == 5);
    CHECK(gs[2].prime == 1451);
    CHECK(gs[2].exponent == 2);
    CHECK(gs[3].prime == 1931);
    CHECK(gs[3].exponent == 1);

    CHECK(factor_completely(1, rng).empty());
    auto ps = factor_completely(Natural("170141183460469231731687303715884105727"), rng);
    REQUIRE(ps.size() == 1);  // 2^127 - 1
    CHECK(ps[0].exponent == 1);
}
