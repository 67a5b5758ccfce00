#include "doctest.h"

#include <ipr/natural.hpp>
#include <ipr/rng.hpp>
#include <ipr/sieve.hpp>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <vector>

using namespace ipr;

namespace {

// Independent square-and-multiply oracle, moduli below 2^32.
std::uint64_t powmod_oracle(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    __uint128_t acc = 1 % m;
    __uint128_t base = b % m;
    while (e > 0) {
        if (e & 1) acc = acc * base % m;
        base = base * base % m;
        e >>= 1;
    }
    return static_cast<std::uint64_t>(acc);
}

}  // namespace

TEST_CASE("modexp matches the oracle exhaustively on a small box") {
    // b, e in [0, 192), m in [2, 192): every combination, split across threads.
    const std::uint64_t kTop = 192;
    const unsigned n_threads = std::max(2u, std::thread::hardware_concurrency());
    std::vector<std::uint64_t> bad(n_threads, 0);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) {
        pool.emplace_back([&, t] {
            for (std::uint64_t b = t; b < kTop; b += n_threads)
                for (std::uint64_t e = 0; e < kTop; ++e)
                    for (std::uint64_t m = 2; m < kTop; ++m)
                        if (modexp(Natural(b), Natural(e), Natural(m)) !=
                            Natural(powmod_oracle(b, e, m)))
                            ++bad[t];
        });
    }
    for (auto& th : pool) th.join();
    CHECK(std::accumulate(bad.begin(), bad.end(), std::uint64_t(0)) == 0);
}

TEST_CASE("modexp randomized against the oracle at 32-bit moduli") {
    SeededRng rng(0xfeedbeef);
    for (int i = 0; i < 20000; ++i) {
        std::uint64_t m = 2 + rng.next_u64() % ((std::uint64_t(1) << 32) - 2);
        std::uint64_t b = rng.next_u64() % (std::uint64_t(1) << 40);
        std::uint64_t e = rng.next_u64() % (std::uint64_t(1) << 40);
        CHECK(modexp(Natural(b), Natural(e), Natural(m)) ==
              Natural(powmod_oracle(b % m, e, m)));
    }
}

TEST_CASE("modexp edge cases") {
    CHECK(modexp(0, 0, 7) == 1);  // empty product
    CHECK(modexp(0, 5, 7) == 0);
    CHECK(modexp(5, 0, 2) == 1);
    CHECK(modexp(12, 1, 7) == 5);  // base canonicalized
    CHECK_THROWS_AS(modexp(2, 3, 1), std::invalid_argument);
    CHECK_THROWS_AS(modexp(2, 3, 0), std::invalid_argument);
    // Fermat on a 128-bit prime.
    Natural p = (Natural(1) << 127) - 1;
    CHECK(modexp(3, p - 1, p) == 1);
    // Multiplicativity in the exponent at 512 bits.
    SeededRng rng(7);
    Natural m = (Natural(1) << 512) | 1;
    for (int i = 0; i < 50; ++i) {
        Natural b = rng.below(m), e1 = rng.below(m), e2 = rng.below(m);
        if (b == 0) continue;
        CHECK(modexp(b, e1 + e2, m) == modexp(b, e1, m) * modexp(b, e2, m) % m);
    }
}

TEST_CASE("residue form agrees with the free function") {
    Residue r = make_residue(100, 7);
    CHECK(r.value == 2);
    CHECK(modexp(r, 5).value == modexp(100, 5, 7));
    CHECK_THROWS_AS(make_residue(1, 1), std::invalid_argument);
}

TEST_CASE("bit_length") {
    CHECK(bit_length(0) == 0);
    CHECK(bit_length(1) == 1);
    CHECK(bit_length(2) == 2);
    CHECK(bit_length(255) == 8);
    CHECK(bit_length(256) == 9);
    for (unsigned k = 1; k < 300; ++k) {
        CHECK(bit_length(Natural(1) << k) == k + 1);
        CHECK(bit_length((Natural(1) << k) - 1) == k);
    }
}

TEST_CASE("gcd") {
    CHECK(gcd(0, 12) == 12);
    CHECK(gcd(12, 0) == 12);
    CHECK_THROWS_AS(gcd(0, 0), std::invalid_argument);
    SeededRng rng(11);
    for (int i = 0; i < 5000; ++i) {
        std::uint64_t a = rng.next_u64() >> 12, b = rng.next_u64() >> 12;
        if (a == 0 && b == 0) continue;
        CHECK(gcd(Natural(a), Natural(b)) == Natural(std::gcd(a, b)));
    }
    // Planted common factor at 256 bits.
    for (int i = 0; i < 200; ++i) {
        Natural g = rng.below(Natural(1) << 128) + 1;
        Natural a = g * (rng.below(Natural(1) << 128) + 1);
        Natural b = g * (rng.below(Natural(1) << 128) + 1);
        CHECK(gcd(a, b) % g == 0);
    }
}

TEST_CASE("integer_root") {
    CHECK_THROWS_AS(integer_root(10, 0), std::invalid_argument);
    CHECK(integer_root(0, 3).root == 0);
    CHECK(integer_root(0, 3).exact);
    CHECK(integer_root(12345, 1).root == 12345);
    CHECK(integer_root(12345, 1).exact);
    SeededRng rng(13);
    for (int i = 0; i < 2000; ++i) {
        Natural n = rng.below(Natural(1) << 200);
        unsigned k = 1 + static_cast<unsigned>(rng.next_u64() % 9);
        IntegerRoot r = integer_root(n, k);
        Natural lo = 1, hi = 1;
        for (unsigned j = 0; j < k; ++j) {
            lo *= r.root;
            hi *= r.root + 1;
        }
        CHECK(lo <= n);
        CHECK(hi > n);
        CHECK(r.exact == (lo == n));
    }
}

TEST_CASE("exceeds_two_thirds is the exact predicate q^3 > n^2") {
    CHECK_FALSE(exceeds_two_thirds(4, 8));  // 64 == 64
    CHECK(exceeds_two_thirds(5, 11));       // 125 > 121
    CHECK_FALSE(exceeds_two_thirds(5, 12)); // 125 < 144
    SeededRng rng(17);
    for (int i = 0; i < 2000; ++i) {
        Natural q = rng.below(Natural(1) << 90) + 1;
        Natural n = rng.below(Natural(1) << 135) + 1;
        CHECK(exceeds_two_thirds(q, n) == (q * q * q > n * n));
    }
}

TEST_CASE("parse_natural and to_string") {
    CHECK(parse_natural("0") == 0);
    CHECK(parse_natural("37690903213") == Natural("37690903213"));
    CHECK(parse_natural("0xff") == 255);
    CHECK(parse_natural("0xFF") == 255);
    CHECK_THROWS_AS(parse_natural(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_natural("12x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_natural("-5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_natural("+5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_natural(" 5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_natural("0x"), std::invalid_argument);
    SeededRng rng(19);
    for (int i = 0; i < 500; ++i) {
        Natural n = rng.below(Natural(1) << 300);
        CHECK(parse_natural(to_string(n)) == n);
    }
}

TEST_CASE("fits_u64 / to_u64") {
    CHECK(fits_u64(0));
    CHECK(to_u64(Natural("18446744073709551615")) == UINT64_MAX);
    CHECK_FALSE(fits_u64(Natural("18446744073709551616")));
    CHECK_THROWS_AS(to_u64(Natural("18446744073709551616")), std::overflow_error);
}

TEST_CASE("SeededRng: determinism, ranges, derivation") {
    SeededRng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    CHECK(a.draws() == 100);
    CHECK(a.trace().seed == 42);
    CHECK(a.trace().draws == 100);

    SeededRng c(1);
    Natural n = (Natural(1) << 100) + 17;
    for (int i = 0; i < 500; ++i) {
        Natural v = c.below(n);
        CHECK(v < n);
    }
    for (int i = 0; i < 500; ++i) {
        Natural v = c.in_range(5, 11);
        CHECK(v >= 5);
        CHECK(v <= 11);
    }
    // Every value of a small range shows up.
    bool seen[7] = {};
    for (int i = 0; i < 400; ++i) seen[static_cast<int>(to_u64(c.in_range(5, 11))) - 5] = true;
    for (bool s : seen) CHECK(s);

    CHECK(SeededRng::derive(42, 0) != SeededRng::derive(42, 1));
    CHECK(SeededRng::derive(42, 0) == SeededRng::derive(42, 0));
    CHECK(SeededRng::derive(42, 0) != SeededRng::derive(43, 0));
}

TEST_CASE("below is unbiased enough to hit both halves") {
    SeededRng rng(3);
    Natural n = (Natural(1) << 64) + 1;  // forces the rejection path
    int low = 0;
    const int kReps = 2000;
    for (int i = 0; i < kReps; ++i)
        if (rng.below(n) < n / 2) ++low;
    CHECK(low > kReps / 2 - 200);
    CHECK(low < kReps / 2 + 200);
}

TEST_CASE("PrimeStream enumerates primes in order") {
    PrimeStream ps;
    CHECK(ps.next() == 2);
    CHECK(ps.next() == 3);
    CHECK(ps.next() == 5);
    CHECK(ps.next() == 7);
    ps.rewind();
    CHECK(ps.next() == 2);
    // Count primes below 10^4 against the known value.
    ps.rewind();
    int count = 0;
    while (ps.next() < 10000) ++count;
    CHECK(count == 1229);
    // Trial-division cross-check on a window.
    ps.rewind();
    std::uint64_t p = 0;
    while ((p = ps.next()) < 3000) {
        bool prime = p >= 2;
        for (std::uint64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) { prime = false; break; }
        CHECK(prime);
    }
}
