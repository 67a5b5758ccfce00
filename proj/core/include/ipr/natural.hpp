#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <cstdint>
#include <string>

namespace ipr {

// Unbounded non-negative integer. GMP-backed; operations below reject
// negative inputs at the API boundary.
using Natural = boost::multiprecision::mpz_int;

// Number of bits in n; bit_length(0) == 0, bit_length(1) == 1.
std::uint64_t bit_length(const Natural& n);

// Value in the canonical range [0, modulus) for a modulus >= 2.
struct Residue {
    Natural value;
    Natural modulus;
};

// Canonicalizes v mod m. Throws std::invalid_argument if m < 2.
Residue make_residue(const Natural& v, const Natural& m);

// base^exp mod modulus. exp == 0 yields 1, including when base == 0 mod m.
// Throws std::invalid_argument if modulus < 2.
Natural modexp(const Natural& base, const Natural& exp, const Natural& modulus);
Residue modexp(const Residue& base, const Natural& exp);

// gcd(0, n) == n; gcd(0, 0) is rejected (std::invalid_argument).
Natural gcd(const Natural& a, const Natural& b);

struct IntegerRoot {
    Natural root;   // floor(n^(1/k))
    bool exact;     // root^k == n
};

// k-th integer root, k >= 1. Throws std::invalid_argument if k == 0.
IntegerRoot integer_root(const Natural& n, unsigned k);

// Exact integer test for Q > n^(2/3), evaluated as Q^3 > n^2.
bool exceeds_two_thirds(const Natural& q, const Natural& n);

// Parses decimal or 0x-prefixed hex; rejects empty, signs, stray characters.
Natural parse_natural(const std::string& text);
std::string to_string(const Natural& n);

// Convenience: n fits in uint64 and its value.
bool fits_u64(const Natural& n);
std::uint64_t to_u64(const Natural& n);

}  // namespace ipr
