#pragma once

#include <map>
#include <string>

#include "ipr/composite_order.hpp"
#include "ipr/factorization.hpp"
#include "ipr/lucas.hpp"
#include "ipr/primitive_root.hpp"

namespace ipr {

const char* guarantee_name(Guarantee g);
const char* verdict_name(LucasVerdict v);
const char* cert_mode_name(CertMode m);

// `n = p1^e1 * ... * Q [bound=B, guarantee=...]`; exponent-1 primes print
// bare; the cofactor is omitted when 1 (unless nothing else was printed).
std::string factorization_line(const PartialFactorization& f);

// One-line JSON records (insertion-ordered keys, Naturals as decimal
// strings, probability bounds as 40-digit directed-rounded decimals).
// Byte-identical for identical inputs.
std::string root_record(const RootCandidate& c, const std::string& algorithm,
                        double eps);
std::string factor_record(const PartialFactorization& f, std::uint64_t seed,
                          std::uint64_t draws);
std::string lucas_record(const LucasOutcome& o, double eps);
std::string verify_record(const VerifyResult& r, const PrimalityCertificate& cert,
                          bool strict);
std::string dh_record(const DhParams& d);

// Two-column "order count" lines, ascending order.
std::string spectrum_records(const std::map<Natural, Natural>& spectrum);

// Classification by certificate shape alone (no functional checks).
CertMode certificate_mode(const PrimalityCertificate& cert);

// Structured text certificate; canonical form round-trips bit-exactly
// through parse_certificate_text.
std::string certificate_text(const PrimalityCertificate& cert, CertMode mode);

struct CertificateFile {
    PrimalityCertificate cert;
    CertMode mode = CertMode::Complete;
    std::string version;
};

// Throws std::invalid_argument on malformed input.
CertificateFile parse_certificate_text(const std::string& text);

}  // namespace ipr
