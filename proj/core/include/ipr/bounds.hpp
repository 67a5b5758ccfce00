#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "ipr/natural.hpp"

namespace ipr {

// One-sided probability bound. Success bounds are rounded down at every
// arithmetic step, failure bounds up, so reported confidence is never
// overstated. Values live in [0, 1] and carry >= 80 bits of mantissa
// (384-bit MPFR internally).
class ProbabilityBound {
  public:
    enum class Kind { SuccessLower, FailureUpper };

    ProbabilityBound();  // exact zero, SuccessLower
    ProbabilityBound(const ProbabilityBound&);
    ProbabilityBound(ProbabilityBound&&) noexcept;
    ProbabilityBound& operator=(const ProbabilityBound&);
    ProbabilityBound& operator=(ProbabilityBound&&) noexcept;
    ~ProbabilityBound();

    static ProbabilityBound exact(Kind kind, int zero_or_one);

    Kind kind() const;
    bool exact_one() const;
    bool exact_zero() const;

    // Pessimistic double (success rounded down, failure up).
    double to_double() const;
    // Pessimistic decimal, fixed 40 significant digits; deterministic.
    std::string str() const;

    // SuccessLower: value >= 1 - eps. FailureUpper: value <= eps.
    bool meets(double eps) const;

    // Sign of (value - num/den), exact.
    int compare_fraction(const Natural& num, const Natural& den) const;
    // Sign of (value - other.value), exact.
    int compare(const ProbabilityBound& other) const;
    // value + other.value == 1 with no rounding (paired bounds only).
    bool sums_to_one_with(const ProbabilityBound& other) const;

    struct Impl;
    const Impl& impl() const { return *impl_; }

  private:
    explicit ProbabilityBound(std::unique_ptr<Impl> impl);
    std::unique_ptr<Impl> impl_;
    friend struct BoundsKernel;
};

struct InitialBound {
    ProbabilityBound bound;
    // Formula value exceeded 1 before clamping (B at or beyond the complete-
    // factorization regime).
    bool oversatisfied = false;
};

// (1 + 1/(Q-1)) * (1 - 1/B)^log_B(Q), clamped to [0, 1]; exactly 1 when
// Q == 1. Valid as a success lower bound when Q has no prime factor < B.
// Pre: B >= 3, Q >= 1.
ProbabilityBound success_lower_bound(const Natural& B, const Natural& Q);

// num/den rounded pessimistically for the kind and clamped to [0, 1].
// Pre: num >= 0, den >= 1.
ProbabilityBound bound_from_fraction(ProbabilityBound::Kind kind,
                                     const Natural& num, const Natural& den);

// (1 + 2/(p-1)) * (1 - 1/B)^log_B((p-1)/2): the a-priori bound before the
// cofactor is known. Pre: p odd, p >= 3, B >= 3.
InitialBound initial_success_bound(const Natural& p, const Natural& B);

// 1 - success_lower_bound(B, Q), same evaluation path, rounded up.
ProbabilityBound failure_F(const Natural& B, const Natural& Q);

// Smallest integer B >= 3 with initial_success_bound(p, B) >= 1 - eps,
// capped at h = (p-1)/2 (at which point factorization is complete anyway).
// Bisection; the bound is monotone non-decreasing in B over [3, h].
// Pre: p odd >= 3, eps in (0, 1).
Natural solve_bound(const Natural& p, double eps);

// Upper bound on the number of distinct prime factors of Q given that all
// of them are >= B: floor of log_B(Q), improved by the refined constants
// 1.0956448 (B >= 2^10), 1.0808280 (B >= 2^15), 1.0561364 (B >= 2^20)
// applied to ln(Q)/ln(ln(Q)) when that is smaller. Pre: Q >= 2, B >= 2.
std::uint64_t omega_upper_bound(const Natural& Q, const Natural& B);

// Smallest alpha in [1, 20] (to 1e-9) such that initial_success_bound with
// B = (log2 p)^alpha reaches 1 - target_failure. Documentation aid for the
// published exponent constants; throws if no alpha in range reaches target.
double solve_alpha(const Natural& p, double target_failure);

}  // namespace ipr
