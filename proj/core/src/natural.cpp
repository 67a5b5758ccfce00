#include "ipr/natural.hpp"

#include <gmp.h>

#include <stdexcept>

namespace ipr {

std::uint64_t bit_length(const Natural& n) {
    if (n < 0) throw std::invalid_argument("bit_length: negative input");
    if (n == 0) return 0;
    return mpz_sizeinbase(n.backend().data(), 2);
}

Residue make_residue(const Natural& v, const Natural& m) {
    if (m < 2) throw std::invalid_argument("Residue: modulus must be >= 2");
    Natural r = v % m;
    if (r < 0) r += m;
    return Residue{std::move(r), m};
}

Natural modexp(const Natural& base, const Natural& exp, const Natural& modulus) {
    if (modulus < 2) throw std::invalid_argument("modexp: modulus must be >= 2");
    if (exp < 0) throw std::invalid_argument("modexp: negative exponent");
    Natural b = base % modulus;
    if (b < 0) b += modulus;
    Natural r;
    mpz_powm(r.backend().data(), b.backend().data(), exp.backend().data(),
             modulus.backend().data());
    return r;
}

Residue modexp(const Residue& base, const Natural& exp) {
    return Residue{modexp(base.value, exp, base.modulus), base.modulus};
}

Natural gcd(const Natural& a, const Natural& b) {
    if (a < 0 || b < 0) throw std::invalid_argument("gcd: negative input");
    if (a == 0 && b == 0) throw std::invalid_argument("gcd: gcd(0, 0) is undefined");
    Natural r;
    mpz_gcd(r.backend().data(), a.backend().data(), b.backend().data());
    return r;
}

IntegerRoot integer_root(const Natural& n, unsigned k) {
    if (k == 0) throw std::invalid_argument("integer_root: k must be >= 1");
    if (n < 0) throw std::invalid_argument("integer_root: negative input");
    Natural r;
    int exact = mpz_root(r.backend().data(), n.backend().data(), k);
    return IntegerRoot{std::move(r), exact != 0};
}

bool exceeds_two_thirds(const Natural& q, const Natural& n) {
    if (q < 0 || n < 0) throw std::invalid_argument("exceeds_two_thirds: negative input");
    return q * q * q > n * n;
}

Natural parse_natural(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("parse_natural: empty string");
    int base = 10;
    std::size_t pos = 0;
    if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
        base = 16;
        pos = 2;
    }
    if (pos == text.size()) throw std::invalid_argument("parse_natural: no digits");
    for (std::size_t i = pos; i < text.size(); ++i) {
        char c = text[i];
        bool ok = (base == 10) ? (c >= '0' && c <= '9')
                               : ((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') ||
                                  (c >= 'A' && c <= 'F'));
        if (!ok) throw std::invalid_argument("parse_natural: invalid digit");
    }
    Natural n;
    if (mpz_set_str(n.backend().data(), text.c_str() + pos, base) != 0)
        throw std::invalid_argument("parse_natural: malformed number");
    return n;
}

std::string to_string(const Natural& n) { return n.str(); }

bool fits_u64(const Natural& n) {
    return n >= 0 && n <= Natural(UINT64_MAX);
}

std::uint64_t to_u64(const Natural& n) {
    if (!fits_u64(n)) throw std::overflow_error("to_u64: value out of range");
    return n.convert_to<std::uint64_t>();
}

}  // namespace ipr
