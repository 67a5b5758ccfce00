#include "ipr/serialize.hpp"

#include <nlohmann/json.hpp>

#include <sstream>
#include <stdexcept>

namespace ipr {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kCertVersion = "v1";

std::string bound_str(const ProbabilityBound& b) { return b.str(); }

std::string power_token(const Natural& p, unsigned e) {
    std::string t = to_string(p);
    if (e != 1) t += "^" + std::to_string(e);
    return t;
}

ordered_json factors_json(const std::vector<FactorPair>& fs) {
    ordered_json arr = ordered_json::array();
    for (const FactorPair& f : fs)
        arr.push_back({{"p", to_string(f.prime)}, {"e", f.exponent}});
    return arr;
}

// Parses "q" or "q^e" tokens.
std::pair<Natural, unsigned> parse_power_token(const std::string& t) {
    auto caret = t.find('^');
    if (caret == std::string::npos) return {parse_natural(t), 1u};
    const std::string qs = t.substr(0, caret);
    const std::string es = t.substr(caret + 1);
    Natural e = parse_natural(es);
    if (e < 1 || !fits_u64(e) || to_u64(e) > 0xffffffffu)
        throw std::invalid_argument("certificate exponent out of range");
    return {parse_natural(qs), static_cast<unsigned>(to_u64(e))};
}

// "key = value" with exact single spaces.
std::string expect_field(const std::string& line, const std::string& key) {
    const std::string prefix = key + " = ";
    if (line.rfind(prefix, 0) != 0)
        throw std::invalid_argument("certificate: expected '" + key + " = ...'");
    return line.substr(prefix.size());
}

}  // namespace

const char* guarantee_name(Guarantee g) {
    return g == Guarantee::Proven ? "proven" : "heuristic";
}

const char* verdict_name(LucasVerdict v) {
    switch (v) {
        case LucasVerdict::Prime: return "prime";
        case LucasVerdict::ProbablyPrime: return "probably-prime";
        case LucasVerdict::Composite: return "composite";
        case LucasVerdict::ProbablyComposite: return "probably-composite";
    }
    return "?";
}

const char* cert_mode_name(CertMode m) {
    switch (m) {
        case CertMode::Complete: return "complete";
        case CertMode::Pocklington: return "pocklington";
        case CertMode::BlsConditional: return "bls-conditional";
    }
    return "?";
}

std::string factorization_line(const PartialFactorization& f) {
    std::ostringstream os;
    os << to_string(f.n) << " = ";
    bool first = true;
    for (const FactorPair& fp : f.factors) {
        if (!first) os << " * ";
        os << power_token(fp.prime, fp.exponent);
        first = false;
    }
    if (!f.complete() || first) {
        if (!first) os << " * ";
        os << to_string(f.cofactor);
    }
    os << " [bound=" << to_string(f.bound_B) << ", guarantee=" << guarantee_name(f.guarantee)
       << "]";
    return os.str();
}

std::string root_record(const RootCandidate& c, const std::string& algorithm,
                        double eps) {
    ordered_json j;
    j["record"] = "primroot";
    j["algorithm"] = algorithm;
    if (eps > 0) j["epsilon"] = eps;
    else j["epsilon"] = nullptr;
    j["p"] = to_string(c.p);
    j["g"] = to_string(c.g);
    j["success_bound"] = bound_str(c.success_bound);
    j["certified_success_bound"] = bound_str(c.certified_success_bound);
    j["advisory_success_bound"] = bound_str(c.advisory_success_bound);
    j["order_lower_bound"] = to_string(c.order_lower_bound);
    j["B_used"] = to_string(c.B_used);
    j["Q_remaining"] = to_string(c.Q_remaining);
    j["complete"] = c.complete;
    j["guarantee"] = guarantee_name(c.guarantee);
    j["seed"] = c.seed_trace.seed;
    j["draws"] = c.seed_trace.draws;
    return j.dump();
}

std::string factor_record(const PartialFactorization& f, std::uint64_t seed,
                          std::uint64_t draws) {
    ordered_json j;
    j["record"] = "factor";
    j["n"] = to_string(f.n);
    j["factors"] = factors_json(f.factors);
    j["cofactor"] = to_string(f.cofactor);
    j["bound_B"] = to_string(f.bound_B);
    j["certified_bound"] = to_string(f.certified_bound);
    j["advisory_bound"] = to_string(f.advisory_bound);
    j["guarantee"] = guarantee_name(f.guarantee);
    j["complete"] = f.complete();
    j["line"] = factorization_line(f);
    j["seed"] = seed;
    j["draws"] = draws;
    return j.dump();
}

std::string lucas_record(const LucasOutcome& o, double eps) {
    ordered_json j;
    j["record"] = "lucas";
    j["verdict"] = verdict_name(o.verdict);
    j["epsilon"] = eps;
    if (o.certificate) {
        const PrimalityCertificate& c = *o.certificate;
        ordered_json pw = ordered_json::array();
        for (const CertEntry& e : c.prime_powers)
            pw.push_back({{"q", to_string(e.q)}, {"e", e.e}});
        j["certificate"] = {{"n", to_string(c.n)},
                            {"a", to_string(c.a)},
                            {"prime_powers", pw},
                            {"Q", to_string(c.cofactor)},
                            {"mode", cert_mode_name(certificate_mode(c))}};
    } else {
        j["certificate"] = nullptr;
    }
    if (o.error_bound) {
        j["error_bound"] = bound_str(*o.error_bound);
        j["error_bound_model"] = "heuristic-bound";
    } else {
        j["error_bound"] = nullptr;
    }
    if (o.evidence) j["evidence"] = to_string(*o.evidence);
    else j["evidence"] = nullptr;
    j["evidence_kind"] = o.evidence_kind;
    j["final_B"] = to_string(o.final_B);
    j["final_Q"] = to_string(o.final_Q);
    j["p_denominator"] = to_string(o.p_denominator);
    j["seed"] = o.seed_trace.seed;
    j["draws"] = o.seed_trace.draws;
    return j.dump();
}

std::string verify_record(const VerifyResult& r, const PrimalityCertificate& cert,
                          bool strict) {
    ordered_json j;
    j["record"] = "verify-cert";
    j["n"] = to_string(cert.n);
    j["valid"] = r.valid;
    j["mode"] = cert_mode_name(r.mode);
    j["deterministic"] = r.deterministic;
    j["strict"] = strict;
    j["reason"] = r.reason;
    return j.dump();
}

std::string dh_record(const DhParams& d) {
    ordered_json j;
    j["record"] = "genparam";
    j["bits"] = d.bits;
    j["epsilon"] = d.eps;
    j["mr_rounds"] = d.mr_rounds;
    j["p"] = to_string(d.p);
    j["g"] = to_string(d.root.g);
    j["success_bound"] = bound_str(d.root.success_bound);
    j["certified_success_bound"] = bound_str(d.root.certified_success_bound);
    j["advisory_success_bound"] = bound_str(d.root.advisory_success_bound);
    j["guarantee"] = guarantee_name(d.root.guarantee);
    j["seed"] = d.seed_trace.seed;
    j["draws"] = d.seed_trace.draws;
    return j.dump();
}

std::string spectrum_records(const std::map<Natural, Natural>& spectrum) {
    std::ostringstream os;
    for (const auto& [order, count] : spectrum)
        os << to_string(order) << " " << to_string(count) << "\n";
    return os.str();
}

CertMode certificate_mode(const PrimalityCertificate& cert) {
    if (cert.cofactor == 1) return CertMode::Complete;
    const Natural k = cert.k_value();
    if (k * k > cert.n) return CertMode::Pocklington;
    return CertMode::BlsConditional;
}

std::string certificate_text(const PrimalityCertificate& cert, CertMode mode) {
    std::ostringstream os;
    os << "ipr certificate " << kCertVersion << "\n";
    os << "n = " << to_string(cert.n) << "\n";
    os << "a = " << to_string(cert.a) << "\n";
    os << "prime_powers =";
    for (const CertEntry& e : cert.prime_powers) os << " " << power_token(e.q, e.e);
    os << "\n";
    os << "Q = " << to_string(cert.cofactor) << "\n";
    os << "mode = " << cert_mode_name(mode) << "\n";
    return os.str();
}

CertificateFile parse_certificate_text(const std::string& text) {
    std::istringstream is(text);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(is, line)) lines.push_back(line);
    if (lines.size() != 6) throw std::invalid_argument("certificate: expected 6 lines");

    CertificateFile out;
    const std::string header = "ipr certificate ";
    if (lines[0].rfind(header, 0) != 0)
        throw std::invalid_argument("certificate: bad header");
    out.version = lines[0].substr(header.size());
    if (out.version != kCertVersion)
        throw std::invalid_argument("certificate: unsupported version " + out.version);

    out.cert.n = parse_natural(expect_field(lines[1], "n"));
    out.cert.a = parse_natural(expect_field(lines[2], "a"));

    const std::string pw = expect_field(lines[3], "prime_powers");
    std::istringstream ps(pw);
    std::string tok;
    while (ps >> tok) {
        auto [q, e] = parse_power_token(tok);
        out.cert.prime_powers.push_back({q, e});
    }
    if (out.cert.prime_powers.empty())
        throw std::invalid_argument("certificate: no prime powers");

    out.cert.cofactor = parse_natural(expect_field(lines[4], "Q"));

    const std::string mode = expect_field(lines[5], "mode");
    if (mode == "complete") out.mode = CertMode::Complete;
    else if (mode == "pocklington") out.mode = CertMode::Pocklington;
    else if (mode == "bls-conditional") out.mode = CertMode::BlsConditional;
    else throw std::invalid_argument("certificate: unknown mode " + mode);
    return out;
}

}  // namespace ipr
