#include "ipr/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "ipr/serialize.hpp"

namespace ipr {
namespace {

constexpr double kDefaultEps = 0x1p-40;

std::uint64_t entropy_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::string sci(double v) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(12) << v;
    return os.str();
}

struct CommonOpts {
    std::optional<std::uint64_t> seed;
    double epsilon = kDefaultEps;
    std::uint64_t rho_budget = std::uint64_t(1) << 20;
    std::string strategy = "rho";
    std::string output = "human";

    std::uint64_t resolve_seed() const { return seed ? *seed : entropy_seed(); }
    FactorStrategy make_strategy() const {
        return strategy == "trial" ? FactorStrategy::trial()
                                   : FactorStrategy::rho(rho_budget);
    }
};

void add_seed(CLI::App* sub, CommonOpts& o) {
    sub->add_option("--seed", o.seed, "rng seed (default: system entropy; echoed in output)");
}
void add_epsilon(CLI::App* sub, CommonOpts& o) {
    sub->add_option("--epsilon", o.epsilon, "failure tolerance in (0,1)")
        ->check(CLI::Range(std::nextafter(0.0, 1.0), std::nextafter(1.0, 0.0)));
}
void add_rho_budget(CLI::App* sub, CommonOpts& o) {
    sub->add_option("--rho-budget", o.rho_budget, "rho iterations per factor attempt")
        ->envname("IPR_RHO_BUDGET")
        ->check(CLI::PositiveNumber);
}
void add_strategy(CLI::App* sub, CommonOpts& o) {
    sub->add_option("--strategy", o.strategy, "factorization strategy")
        ->check(CLI::IsMember({"trial", "rho"}));
}
void add_output(CLI::App* sub, CommonOpts& o) {
    sub->add_option("--output", o.output, "output format")
        ->check(CLI::IsMember({"human", "structured"}));
}

void print_root_human(std::ostream& out, const RootCandidate& c,
                      const std::string& algorithm) {
    out << "p = " << to_string(c.p) << "\n";
    out << "g = " << to_string(c.g) << "\n";
    out << "algorithm = " << algorithm << "\n";
    out << "B = " << to_string(c.B_used) << "\n";
    if (c.complete) {
        out << "factorization complete: success probability 1\n";
    } else {
        out << "cofactor Q = " << to_string(c.Q_remaining) << "\n";
        out << "success bound >= " << c.success_bound.str() << " ("
            << guarantee_name(c.guarantee) << ")\n";
        out << "certified bound >= " << c.certified_success_bound.str() << "\n";
        out << "advisory bound >= " << c.advisory_success_bound.str() << "\n";
    }
    out << "order lower bound = " << to_string(c.order_lower_bound) << "\n";
    out << "seed = " << c.seed_trace.seed << " (draws = " << c.seed_trace.draws << ")\n";
}

int cmd_primroot(std::ostream& out, const std::string& p_str,
                 const std::string& algorithm, const CommonOpts& o) {
    const Natural p = parse_natural(p_str);
    SeededRng rng(o.resolve_seed());
    RootCandidate c;
    double eps_used = o.epsilon;
    if (algorithm == "algorithm1" || algorithm == "1") {
        c = probable_root(p, o.epsilon, o.make_strategy(), rng);
    } else if (algorithm == "heuristic2" || algorithm == "2") {
        c = fast_root(p, rng, o.rho_budget);
        eps_used = 0.0;  // no solved target; B from the closed-form calibration
    } else {
        c = industrial_root(p, rng, o.rho_budget);
        eps_used = 0x1p-40;
    }
    const char* name = (algorithm == "algorithm1" || algorithm == "1") ? "algorithm1"
                       : (algorithm == "heuristic2" || algorithm == "2") ? "heuristic2"
                                                                         : "algorithm3";
    if (o.output == "structured") out << root_record(c, name, eps_used) << "\n";
    else print_root_human(out, c, name);
    return 0;
}

int cmd_factor(std::ostream& out, const std::string& n_str, const std::string& b_str,
               const CommonOpts& o) {
    const Natural n = parse_natural(n_str);
    const Natural B = parse_natural(b_str);
    SeededRng rng(o.resolve_seed());
    PartialFactorization f = partial_factor(n, B, o.make_strategy(), rng);
    if (o.output == "structured") {
        out << factor_record(f, rng.seed(), rng.draws()) << "\n";
    } else {
        out << factorization_line(f) << "\n";
        out << "seed = " << rng.seed() << " (draws = " << rng.draws() << ")\n";
    }
    return 0;
}

int cmd_lucas(std::ostream& out, std::ostream& err, const std::string& n_str,
              const std::string& override_str, const std::string& cert_out,
              const CommonOpts& o) {
    const Natural n = parse_natural(n_str);
    std::optional<Natural> override_b;
    if (!override_str.empty()) override_b = parse_natural(override_str);
    SeededRng rng(o.resolve_seed());
    LucasOutcome res = lucas_test(n, o.epsilon, rng, override_b, o.rho_budget);

    if (o.output == "structured") {
        out << lucas_record(res, o.epsilon) << "\n";
    } else {
        out << "n = " << to_string(n) << "\n";
        out << "verdict = " << verdict_name(res.verdict) << "\n";
        if (res.certificate) {
            out << "certificate mode = " << cert_mode_name(certificate_mode(*res.certificate))
                << "\n";
            out << "a = " << to_string(res.certificate->a) << "\n";
        }
        if (res.error_bound)
            out << "error bound <= " << res.error_bound->str() << " (heuristic-bound)\n";
        if (res.evidence)
            out << res.evidence_kind << " = " << to_string(*res.evidence) << "\n";
        out << "seed = " << res.seed_trace.seed << " (draws = " << res.seed_trace.draws
            << ")\n";
    }

    if (!cert_out.empty()) {
        if (res.certificate) {
            std::ofstream f(cert_out, std::ios::binary);
            if (!f) throw std::runtime_error("cannot open " + cert_out);
            f << certificate_text(*res.certificate, certificate_mode(*res.certificate));
        } else {
            err << "no certificate to write (verdict " << verdict_name(res.verdict)
                << ")\n";
        }
    }

    switch (res.verdict) {
        case LucasVerdict::Prime:
        case LucasVerdict::ProbablyPrime: return 0;
        case LucasVerdict::Composite: return 2;
        case LucasVerdict::ProbablyComposite: return 3;
    }
    return 1;
}

int cmd_verify(std::ostream& out, std::ostream& err, const std::string& path,
               bool strict, const CommonOpts& o) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        err << "cannot open " << path << "\n";
        return 1;
    }
    std::ostringstream buf;
    buf << f.rdbuf();

    CertificateFile cf;
    try {
        cf = parse_certificate_text(buf.str());
    } catch (const std::invalid_argument& e) {
        err << "invalid certificate: " << e.what() << "\n";
        return 2;
    }
    VerifyResult r = verify_certificate(cf.cert, strict);
    if (r.valid && r.mode != cf.mode) {
        r.valid = false;
        r.reason = "stored mode does not match derived mode";
    }
    if (o.output == "structured") {
        out << verify_record(r, cf.cert, strict) << "\n";
    } else if (r.valid) {
        out << "valid (" << cert_mode_name(r.mode)
            << (r.deterministic ? ", deterministic" : ", probabilistic") << ")\n";
    } else {
        out << "invalid: " << r.reason << "\n";
    }
    return r.valid ? 0 : 2;
}

int cmd_spectrum(std::ostream& out, const std::string& n_str, const CommonOpts& o) {
    const Natural n = parse_natural(n_str);
    if (n < 2) throw std::invalid_argument("spectrum: n must be >= 2");
    SeededRng rng(o.resolve_seed());
    std::vector<FactorPair> nf = factor_completely(n, rng);
    out << spectrum_records(order_spectrum(nf));
    return 0;
}

int cmd_genparam(std::ostream& out, unsigned bits, const CommonOpts& o) {
    SeededRng rng(o.resolve_seed());
    DhParams d = generate_dh_params(bits, o.epsilon, rng);
    if (o.output == "structured") {
        out << dh_record(d) << "\n";
    } else {
        out << "p = " << to_string(d.p) << "\n";
        out << "g = " << to_string(d.root.g) << "\n";
        out << "bits = " << d.bits << ", mr_rounds = " << d.mr_rounds << "\n";
        out << "success bound >= " << d.root.success_bound.str() << " ("
            << guarantee_name(d.root.guarantee) << ")\n";
        out << "seed = " << d.seed_trace.seed << " (draws = " << d.seed_trace.draws
            << ")\n";
    }
    return 0;
}

Natural next_probable_prime(Natural c, SeededRng& rng) {
    if (c % 2 == 0) ++c;
    while (!miller_rabin(c, kMrRounds, rng).probable_prime) c += 2;
    return c;
}

int cmd_bench_sweep(std::ostream& out, unsigned floor_bits, unsigned omega_min,
                    unsigned omega_max, unsigned samples, const CommonOpts& o) {
    const std::uint64_t seed = o.resolve_seed();
    SeededRng rng(seed);
    const Natural floor = Natural(1) << floor_bits;
    const Natural spread = Natural(1) << (floor_bits > 8 ? floor_bits - 8 : 1);
    out << "seed,bits_of_Q,omega,exact_failure,bound_failure\n";
    for (unsigned omega = omega_min; omega <= omega_max; ++omega) {
        for (unsigned s = 0; s < samples; ++s) {
            std::vector<Natural> qs;
            while (qs.size() < omega) {
                Natural q = next_probable_prime(floor + rng.below(spread), rng);
                if (std::find(qs.begin(), qs.end(), q) == qs.end()) qs.push_back(q);
            }
            Natural Q = 1, phi = 1;
            for (const Natural& q : qs) {
                Q *= q;
                phi *= q - 1;
            }
            // Q is squarefree with all factors >= floor, so both columns are
            // exact by construction: failure = 1 - phi(Q)/(Q-1).
            ProbabilityBound exact = bound_from_fraction(
                ProbabilityBound::Kind::FailureUpper, Q - 1 - phi, Q - 1);
            ProbabilityBound bound = failure_F(floor, Q);
            out << seed << "," << bit_length(Q) << "," << omega << ","
                << sci(exact.to_double()) << "," << sci(bound.to_double()) << "\n";
        }
    }
    return 0;
}

int cmd_bench_timing(std::ostream& out, std::vector<unsigned> bits_list, unsigned reps,
                     const CommonOpts& o) {
    const std::uint64_t master = o.resolve_seed();
    out << "bits,algorithm,median_ms,p90_ms\n";
    std::uint64_t counter = 0;
    for (unsigned bits : bits_list) {
        SeededRng prng(SeededRng::derive(master, counter++));
        const Natural top = Natural(1) << (bits - 1);
        Natural p = next_probable_prime(top | prng.below(top) | 1, prng);

        const char* names[] = {"heuristic2", "algorithm3", "lucas_test"};
        for (const char* name : names) {
            std::vector<double> ms;
            for (unsigned r = 0; r < reps; ++r) {
                SeededRng rng(SeededRng::derive(master, counter++));
                auto t0 = std::chrono::steady_clock::now();
                if (std::string(name) == "heuristic2") {
                    fast_root(p, rng, o.rho_budget);
                } else if (std::string(name) == "algorithm3") {
                    industrial_root(p, rng, o.rho_budget);
                } else {
                    lucas_test(p, o.epsilon, rng, std::nullopt, o.rho_budget);
                }
                auto t1 = std::chrono::steady_clock::now();
                ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
            }
            std::sort(ms.begin(), ms.end());
            const double median = ms[ms.size() / 2];
            const double p90 = ms[std::min(ms.size() - 1,
                                           static_cast<std::size_t>(ms.size() * 9 / 10))];
            out << bits << "," << name << "," << std::fixed << std::setprecision(3)
                << median << "," << p90 << "\n";
            out.unsetf(std::ios::fixed);
        }
    }
    return 0;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"industrial-strength primitive roots and Lucas primality"};
    app.require_subcommand(1);

    CommonOpts o;

    auto* primroot = app.add_subcommand("primroot", "generate a primitive root mod p");
    std::string p_str;
    std::string algorithm = "algorithm1";
    primroot->add_option("p", p_str, "odd prime modulus (decimal or 0x-hex)")->required();
    primroot->add_option("--algorithm", algorithm, "generator calibration")
        ->check(CLI::IsMember({"algorithm1", "1", "heuristic2", "2", "algorithm3", "3"}));
    add_epsilon(primroot, o);
    add_seed(primroot, o);
    add_strategy(primroot, o);
    add_rho_budget(primroot, o);
    add_output(primroot, o);

    auto* factor = app.add_subcommand("factor", "partially factor n below a bound");
    std::string n_str, bound_str = "65536";
    factor->add_option("n", n_str, "integer to factor")->required();
    factor->add_option("--bound", bound_str, "factor-size bound B");
    add_seed(factor, o);
    add_strategy(factor, o);
    add_rho_budget(factor, o);
    add_output(factor, o);

    auto* lucas = app.add_subcommand("lucas", "probabilistic Lucas primality test");
    std::string lucas_n, override_str, cert_out;
    lucas->add_option("n", lucas_n, "odd integer to test")->required();
    lucas->add_option("--bound-override", override_str,
                      "cap every refined factor bound (models limited effort)");
    lucas->add_option("--cert-out", cert_out, "write certificate file on Prime");
    add_epsilon(lucas, o);
    add_seed(lucas, o);
    add_rho_budget(lucas, o);
    add_output(lucas, o);

    auto* verify = app.add_subcommand("verify-cert", "re-check a certificate file");
    std::string cert_path;
    bool strict = false;
    verify->add_option("file", cert_path, "certificate file")->required();
    verify->add_flag("--strict", strict, "add the BLS square test");
    add_output(verify, o);

    auto* spectrum = app.add_subcommand("spectrum", "order spectrum of (Z/n)^*");
    std::string spec_n;
    spectrum->add_option("n", spec_n, "modulus")->required();
    add_seed(spectrum, o);
    add_output(spectrum, o);

    auto* genparam = app.add_subcommand("genparam", "probable-prime p with generator");
    unsigned bits = 256;
    genparam->add_option("--bits", bits, "prime size in bits")
        ->check(CLI::Range(8u, 8192u));
    add_epsilon(genparam, o);
    add_seed(genparam, o);
    add_output(genparam, o);

    auto* bench = app.add_subcommand("bench", "benchmark harness (CSV on stdout)");
    bench->require_subcommand(1);
    auto* sweep = bench->add_subcommand("failure-sweep",
                                        "exact vs bounded failure for constructed Q");
    unsigned floor_bits = 40, omega_min = 2, omega_max = 6, samples = 3;
    sweep->add_option("--floor-bits", floor_bits, "prime floor 2^bits")
        ->check(CLI::Range(8u, 128u));
    sweep->add_option("--omega-min", omega_min)->check(CLI::Range(1u, 16u));
    sweep->add_option("--omega-max", omega_max)->check(CLI::Range(1u, 16u));
    sweep->add_option("--samples", samples, "rows per omega")->check(CLI::PositiveNumber);
    add_seed(sweep, o);

    auto* timing = bench->add_subcommand("timing", "median/p90 per algorithm");
    std::vector<unsigned> bits_list{64, 128, 256};
    unsigned reps = 20;
    double timing_eps = 1e-6;
    timing->add_option("--bits", bits_list, "bit sizes (repeatable)")
        ->check(CLI::Range(16u, 4096u));
    timing->add_option("--reps", reps)->check(CLI::PositiveNumber);
    add_seed(timing, o);
    add_rho_budget(timing, o);
    timing->add_option("--epsilon", timing_eps, "lucas failure tolerance")
        ->check(CLI::Range(std::nextafter(0.0, 1.0), std::nextafter(1.0, 0.0)));

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (app.got_subcommand(primroot)) return cmd_primroot(out, p_str, algorithm, o);
        if (app.got_subcommand(factor)) return cmd_factor(out, n_str, bound_str, o);
        if (app.got_subcommand(lucas))
            return cmd_lucas(out, err, lucas_n, override_str, cert_out, o);
        if (app.got_subcommand(verify)) return cmd_verify(out, err, cert_path, strict, o);
        if (app.got_subcommand(spectrum)) return cmd_spectrum(out, spec_n, o);
        if (app.got_subcommand(genparam)) return cmd_genparam(out, bits, o);
        if (app.got_subcommand(bench)) {
            if (bench->got_subcommand(sweep)) {
                if (omega_min > omega_max)
                    throw std::invalid_argument("omega-min exceeds omega-max");
                return cmd_bench_sweep(out, floor_bits, omega_min, omega_max, samples, o);
            }
            CommonOpts ot = o;
            ot.epsilon = timing_eps;
            return cmd_bench_timing(out, bits_list, reps, ot);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "usage error: no subcommand\n";
    return 1;
}

}  // namespace ipr
