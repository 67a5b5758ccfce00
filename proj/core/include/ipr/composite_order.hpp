#pragma once

#include <map>
#include <vector>

#include "ipr/factorization.hpp"
#include "ipr/natural.hpp"

namespace ipr {

// All functions take n as a complete factorization (ascending prime powers)
// and are deterministic; internal factoring of group-theoretic quantities
// uses a fixed-seed generator.

Natural euler_phi(const std::vector<FactorPair>& n_factors);
Natural carmichael_lambda(const std::vector<FactorPair>& n_factors);

struct OrderCount {
    Natural count;
    bool order_divides_lambda = false;
};

// Number of invertible residues mod n of multiplicative order exactly d.
// Computed per CRT component and combined by lcm over the divisor lattice
// of d; throws std::length_error when the lattice exceeds the cost wall.
OrderCount count_of_order(const std::vector<FactorPair>& n_factors, const Natural& d);

// order -> count for every divisor of lambda(n). Same cost wall.
std::map<Natural, Natural> order_spectrum(const std::vector<FactorPair>& n_factors);

// Number of invertible residues whose order is divisible by the prime q:
// phi(n) * (1 - q^-s) where s = sum_i v_q(phi(p_i^e_i)). Exact.
Natural count_order_divisible_by(const std::vector<FactorPair>& n_factors,
                                 const Natural& q);

// Brute-force oracle. Pre: 2 <= n <= 2^20.
std::map<Natural, Natural> brute_spectrum(const Natural& n);

}  // namespace ipr
