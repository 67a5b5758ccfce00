#include "ipr/bounds.hpp"

#include <gmp.h>
#include <mpfr.h>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace ipr {

namespace {
// Success bounds are computed at PREC_S. Failure complements need extra
// headroom so 1 - s is exact: s is clamped to {0} u [2^-120, 1], so its
// lowest significand bit is >= 2^-(120+PREC_S), covered by PREC_F.
constexpr mpfr_prec_t PREC_S = 384;
constexpr mpfr_prec_t PREC_F = 520;
constexpr long CLAMP_EXP = -120;

struct Raii {
    mpfr_t v;
    explicit Raii(mpfr_prec_t prec = PREC_S) { mpfr_init2(v, prec); }
    ~Raii() { mpfr_clear(v); }
    Raii(const Raii&) = delete;
    Raii& operator=(const Raii&) = delete;
    operator mpfr_ptr() { return v; }
    operator mpfr_srcptr() const { return v; }
};

void set_natural(mpfr_ptr out, const Natural& n, mpfr_rnd_t rnd) {
    mpfr_set_z(out, n.backend().data(), rnd);
}
}  // namespace

struct ProbabilityBound::Impl {
    Kind kind = Kind::SuccessLower;
    Raii val;
    Impl() : val(PREC_F) { mpfr_set_zero(val, 1); }
};

ProbabilityBound::ProbabilityBound() : impl_(std::make_unique<Impl>()) {}
ProbabilityBound::ProbabilityBound(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}
ProbabilityBound::ProbabilityBound(const ProbabilityBound& o)
    : impl_(std::make_unique<Impl>()) {
    impl_->kind = o.impl_->kind;
    mpfr_set(impl_->val, o.impl_->val.v, MPFR_RNDN);  // same precision, exact
}
ProbabilityBound::ProbabilityBound(ProbabilityBound&&) noexcept = default;
ProbabilityBound& ProbabilityBound::operator=(const ProbabilityBound& o) {
    if (this != &o) {
        impl_->kind = o.impl_->kind;
        mpfr_set(impl_->val, o.impl_->val.v, MPFR_RNDN);
    }
    return *this;
}
ProbabilityBound& ProbabilityBound::operator=(ProbabilityBound&&) noexcept = default;
ProbabilityBound::~ProbabilityBound() = default;

ProbabilityBound ProbabilityBound::exact(Kind kind, int zero_or_one) {
    auto impl = std::make_unique<Impl>();
    impl->kind = kind;
    mpfr_set_si(impl->val, zero_or_one, MPFR_RNDN);
    return ProbabilityBound(std::move(impl));
}

ProbabilityBound::Kind ProbabilityBound::kind() const { return impl_->kind; }
bool ProbabilityBound::exact_one() const { return mpfr_cmp_ui(impl_->val, 1) == 0; }
bool ProbabilityBound::exact_zero() const { return mpfr_zero_p(impl_->val.v); }

double ProbabilityBound::to_double() const {
    mpfr_rnd_t rnd = impl_->kind == Kind::SuccessLower ? MPFR_RNDD : MPFR_RNDU;
    return mpfr_get_d(impl_->val, rnd);
}

std::string ProbabilityBound::str() const {
    mpfr_rnd_t rnd = impl_->kind == Kind::SuccessLower ? MPFR_RNDD : MPFR_RNDU;
    char* s = nullptr;
    mpfr_asprintf(&s, impl_->kind == Kind::SuccessLower ? "%.40RDe" : "%.40RUe",
                  static_cast<mpfr_srcptr>(impl_->val));
    (void)rnd;
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

bool ProbabilityBound::meets(double eps) const {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("ProbabilityBound::meets: eps outside (0,1)");
    if (impl_->kind == Kind::FailureUpper) {
        Raii e(PREC_F);
        mpfr_set_d(e, eps, MPFR_RNDD);  // stricter target for an upper bound
        return mpfr_cmp(impl_->val, e) <= 0;
    }
    Raii t(PREC_F);
    mpfr_set_d(t, eps, MPFR_RNDN);  // doubles are exact at this precision
    mpfr_ui_sub(t, 1, t, MPFR_RNDU);
    return mpfr_cmp(impl_->val, t) >= 0;
}

int ProbabilityBound::compare_fraction(const Natural& num, const Natural& den) const {
    if (den <= 0) throw std::invalid_argument("compare_fraction: den must be positive");
    mpq_t q;
    mpq_init(q);
    mpq_set_num(q, num.backend().data());
    mpq_set_den(q, den.backend().data());
    mpq_canonicalize(q);
    int c = mpfr_cmp_q(impl_->val, q);
    mpq_clear(q);
    return c;
}

int ProbabilityBound::compare(const ProbabilityBound& other) const {
    return mpfr_cmp(impl_->val, other.impl_->val);
}

bool ProbabilityBound::sums_to_one_with(const ProbabilityBound& other) const {
    Raii sum(PREC_F + PREC_F);
    int inexact = mpfr_add(sum, impl_->val, other.impl_->val, MPFR_RNDN);
    return inexact == 0 && mpfr_cmp_ui(sum, 1) == 0;
}

struct BoundsKernel {
    static ProbabilityBound make(std::unique_ptr<ProbabilityBound::Impl> impl) {
        return ProbabilityBound(std::move(impl));
    }

    // Computes the refined success bound rounded down throughout.
    // prefix_num/prefix_den: the (1 + num/den) prefactor.
    static std::unique_ptr<ProbabilityBound::Impl> success(
        const Natural& B, const Natural& Q, const Natural& prefix_den,
        bool* oversatisfied) {
        auto impl = std::make_unique<ProbabilityBound::Impl>();
        impl->kind = ProbabilityBound::Kind::SuccessLower;
        if (oversatisfied) *oversatisfied = false;
        if (Q == 1) {
            mpfr_set_ui(impl->val, 1, MPFR_RNDN);
            return impl;
        }
        // t1 = 1 + 1/prefix_den, rounded down: divide by an upper prefix_den.
        Raii t1, tmp;
        set_natural(tmp, prefix_den, MPFR_RNDU);
        mpfr_ui_div(t1, 1, tmp, MPFR_RNDD);
        mpfr_add_ui(t1, t1, 1, MPFR_RNDD);
        // base = 1 - 1/B, rounded down: subtract an upper 1/B.
        Raii base;
        set_natural(tmp, B, MPFR_RNDD);
        mpfr_ui_div(base, 1, tmp, MPFR_RNDU);
        mpfr_ui_sub(base, 1, base, MPFR_RNDD);
        // E = ln(Q)/ln(B), rounded up (base < 1, so a larger exponent is
        // the pessimistic direction).
        Raii lnq, lnb, e;
        set_natural(tmp, Q, MPFR_RNDU);
        mpfr_log(lnq, tmp, MPFR_RNDU);
        set_natural(tmp, B, MPFR_RNDD);
        mpfr_log(lnb, tmp, MPFR_RNDD);
        mpfr_div(e, lnq, lnb, MPFR_RNDU);
        // s = t1 * base^E, rounded down.
        Raii pw, s;
        mpfr_pow(pw, base, e, MPFR_RNDD);
        mpfr_mul(s, t1, pw, MPFR_RNDD);
        if (mpfr_cmp_ui(s, 1) > 0) {
            if (oversatisfied) *oversatisfied = true;
            mpfr_set_ui(s, 1, MPFR_RNDN);
        }
        if (mpfr_sgn(s.v) <= 0 ||
            (!mpfr_zero_p(s.v) && mpfr_get_exp(s.v) < CLAMP_EXP)) {
            mpfr_set_zero(s, 1);  // 0 is still a valid lower bound
        }
        mpfr_set(impl->val, s.v, MPFR_RNDN);  // widening copy, exact
        return impl;
    }
};

ProbabilityBound success_lower_bound(const Natural& B, const Natural& Q) {
    if (B < 3) throw std::invalid_argument("success_lower_bound: B must be >= 3");
    if (Q < 1) throw std::invalid_argument("success_lower_bound: Q must be >= 1");
    return BoundsKernel::make(BoundsKernel::success(B, Q, Q - 1, nullptr));
}

ProbabilityBound bound_from_fraction(ProbabilityBound::Kind kind,
                                     const Natural& num, const Natural& den) {
    if (den < 1) throw std::invalid_argument("bound_from_fraction: den must be >= 1");
    if (num < 0) throw std::invalid_argument("bound_from_fraction: num must be >= 0");
    auto impl = std::make_unique<ProbabilityBound::Impl>();
    impl->kind = kind;
    mpq_t q;
    mpq_init(q);
    mpq_set_num(q, num.backend().data());
    mpq_set_den(q, den.backend().data());
    mpq_canonicalize(q);
    mpfr_set_q(impl->val, q,
               kind == ProbabilityBound::Kind::SuccessLower ? MPFR_RNDD : MPFR_RNDU);
    mpq_clear(q);
    if (mpfr_cmp_ui(impl->val, 1) > 0) mpfr_set_ui(impl->val, 1, MPFR_RNDN);
    return BoundsKernel::make(std::move(impl));
}

InitialBound initial_success_bound(const Natural& p, const Natural& B) {
    if (p < 3 || p % 2 == 0)
        throw std::invalid_argument("initial_success_bound: p must be odd and >= 3");
    if (B < 3) throw std::invalid_argument("initial_success_bound: B must be >= 3");
    Natural h = (p - 1) / 2;
    bool oversat = false;
    // Prefactor (1 + 2/(p-1)) == (1 + 1/h); the cofactor stand-in is h.
    auto impl = BoundsKernel::success(B, h == 0 ? Natural(1) : h, h, &oversat);
    InitialBound out{BoundsKernel::make(std::move(impl)), oversat};
    if (h == 1) {
        // p == 3: exponent is 0, formula value is 1 + 2/(p-1) > 1.
        out.bound = ProbabilityBound::exact(ProbabilityBound::Kind::SuccessLower, 1);
        out.oversatisfied = true;
    }
    return out;
}

ProbabilityBound failure_F(const Natural& B, const Natural& Q) {
    ProbabilityBound s = success_lower_bound(B, Q);
    auto impl = std::make_unique<ProbabilityBound::Impl>();
    impl->kind = ProbabilityBound::Kind::FailureUpper;
    // Exact complement: s lives in {0} u [2^-120, 1] with PREC_S significant
    // bits, so 1 - s is representable at PREC_F.
    int inexact = mpfr_ui_sub(impl->val, 1, s.impl().val, MPFR_RNDU);
    if (inexact != 0)
        throw std::logic_error("failure_F: complement unexpectedly inexact");
    return BoundsKernel::make(std::move(impl));
}

Natural solve_bound(const Natural& p, double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("solve_bound: eps outside (0,1)");
    if (p < 3 || p % 2 == 0)
        throw std::invalid_argument("solve_bound: p must be odd and >= 3");
    Natural h = (p - 1) / 2;
    if (h < 3) return Natural(3);  // tiny p: already complete at the floor
    auto meets = [&](const Natural& b) {
        return initial_success_bound(p, b).bound.meets(eps);
    };
    if (meets(3)) return Natural(3);
    if (!meets(h)) return h;  // capped: factorization is complete at B = h
    Natural lo = 3, hi = h;   // lo fails, hi meets
    while (hi - lo > 1) {
        Natural mid = (lo + hi) / 2;
        if (meets(mid)) hi = mid; else lo = mid;
    }
    // The computed bound is monotone up to final-ulp effects; a short
    // downward walk pins the exact minimal B under the same predicate.
    int guard = 0;
    while (hi > 3 && guard < 64 && meets(hi - 1)) { --hi; ++guard; }
    return hi;
}

std::uint64_t omega_upper_bound(const Natural& Q, const Natural& B) {
    if (Q < 2) throw std::invalid_argument("omega_upper_bound: Q must be >= 2");
    if (B < 2) throw std::invalid_argument("omega_upper_bound: B must be >= 2");
    Raii tmp, lnq, lnb, v;
    set_natural(tmp, Q, MPFR_RNDU);
    mpfr_log(lnq, tmp, MPFR_RNDU);
    set_natural(tmp, B, MPFR_RNDD);
    mpfr_log(lnb, tmp, MPFR_RNDD);
    mpfr_div(v, lnq, lnb, MPFR_RNDU);  // log_B(Q), upper
    // Refined bound c * ln(Q)/ln(ln(Q)) for B over the published thresholds;
    // profitable exactly when B^c < ln(Q).
    const char* constant = nullptr;
    if (B >= (Natural(1) << 20)) constant = "1.0561364";
    else if (B >= (Natural(1) << 15)) constant = "1.0808280";
    else if (B >= (Natural(1) << 10)) constant = "1.0956448";
    if (constant != nullptr && mpfr_cmp_ui(lnq, 3) > 0) {  // need ln(ln Q) > 1
        Raii lnlnq, c, r;
        mpfr_log(lnlnq, lnq, MPFR_RNDD);  // ln(Q) was upper; log is monotone,
                                          // dominated by the RNDD here
        mpfr_set_str(c, constant, 10, MPFR_RNDU);
        mpfr_mul(r, c, lnq, MPFR_RNDU);
        mpfr_div(r, r, lnlnq, MPFR_RNDU);
        if (mpfr_cmp(r, v) < 0) mpfr_set(v, r.v, MPFR_RNDU);
    }
    mpfr_floor(v, v);
    return static_cast<std::uint64_t>(mpfr_get_ui(v, MPFR_RNDN));
}

double solve_alpha(const Natural& p, double target_failure) {
    if (!(target_failure > 0.0 && target_failure < 1.0))
        throw std::invalid_argument("solve_alpha: target outside (0,1)");
    if (p < 5) throw std::invalid_argument("solve_alpha: p too small");
    Natural h = (p - 1) / 2;
    Raii target(PREC_F);
    mpfr_set_d(target, target_failure, MPFR_RNDN);
    mpfr_ui_sub(target, 1, target, MPFR_RNDN);
    // Real-valued B = (log2 p)^alpha plugged into the initial bound; the
    // success-vs-target comparison stays in MPFR (a 2^-55 target is below
    // double resolution next to 1).
    auto meets = [&](double alpha) {
        Raii pp, l2p, b, t1, base, lnh, lnb, e, pw, s, tmp;
        set_natural(pp, p, MPFR_RNDN);
        mpfr_log2(l2p, pp, MPFR_RNDN);
        mpfr_set_d(tmp, alpha, MPFR_RNDN);
        mpfr_pow(b, l2p, tmp, MPFR_RNDN);
        set_natural(tmp, p - 1, MPFR_RNDN);
        mpfr_ui_div(t1, 2, tmp, MPFR_RNDN);
        mpfr_add_ui(t1, t1, 1, MPFR_RNDN);
        mpfr_ui_div(base, 1, b, MPFR_RNDN);
        mpfr_ui_sub(base, 1, base, MPFR_RNDN);
        set_natural(tmp, h, MPFR_RNDN);
        mpfr_log(lnh, tmp, MPFR_RNDN);
        mpfr_log(lnb, b, MPFR_RNDN);
        mpfr_div(e, lnh, lnb, MPFR_RNDN);
        mpfr_pow(pw, base, e, MPFR_RNDN);
        mpfr_mul(s, t1, pw, MPFR_RNDN);
        return mpfr_cmp(s, target) >= 0;
    };
    double lo = 1.0, hi = 20.0;
    if (!meets(hi))
        throw std::domain_error("solve_alpha: target unreachable with alpha <= 20");
    if (meets(lo)) return lo;
    while (hi - lo > 1e-9) {
        double mid = 0.5 * (lo + hi);
        if (meets(mid)) hi = mid; else lo = mid;
    }
    return hi;
}

}  // namespace ipr
