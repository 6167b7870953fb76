#pragma once

#include <cstddef>
#include <memory>

#include "bcz/contfrac.hpp"
#include "bcz/rational.hpp"

namespace bcz {

// An irrational value known through a shrinkable interval bracketed by two
// consecutive convergents of its continued fraction. The true value always
// lies in interval(); refinement consumes one coefficient at a time and
// shrinks the width below 1/(q'_k q'_{k+1}), which decays at least at the
// Fibonacci rate. Refinement mutates the bracket monotonically; a value is
// single-writer, clone per worker for parallel use.
class CertifiedReal {
  public:
    explicit CertifiedReal(CfPtr cf);

    const ContinuedFraction& cf() const { return *cf_; }
    CfPtr cf_ptr() const { return cf_; }

    Interval interval() const;
    std::size_t terms_consumed() const { return hi_index_ + 1; }

    // Consume one more coefficient. Returns false when a finite source is
    // exhausted (the bracket then stays at its final resolution).
    bool refine_once();

    // Shrink the interval width to <= eps. Throws StreamExhausted if a finite
    // source cannot reach eps.
    void refine_to(const Rational& eps);

    CertifiedReal clone() const { return *this; }

  private:
    CfPtr cf_;
    std::size_t hi_index_;  // bracket endpoints are convergents hi_index_-1, hi_index_
};

// refine() of the spec: functional form of CertifiedReal::refine_to.
CertifiedReal refine(CertifiedReal x, const Rational& eps);

// alpha + beta * s, evaluated over the certified bracket of s.
struct LinearForm {
    Rational alpha, beta;

    LinearForm() = default;
    LinearForm(Rational a, Rational b) : alpha(std::move(a)), beta(std::move(b)) {}
    static LinearForm constant(Rational a) { return LinearForm(std::move(a), Rational(0)); }

    bool is_constant() const { return beta.sign() == 0; }
    Interval eval(const Interval& s) const;
};

inline LinearForm operator+(const LinearForm& a, const LinearForm& b) {
    return LinearForm(a.alpha + b.alpha, a.beta + b.beta);
}
inline LinearForm operator-(const LinearForm& a, const LinearForm& b) {
    return LinearForm(a.alpha - b.alpha, a.beta - b.beta);
}

// Default certified_floor precision cap: bracket denominators up to 4096 bits,
// far beyond desk-scale orbit needs.
inline constexpr unsigned kDefaultMaxBits = 4096;

// floor(num/den) with num, den linear forms in s and den > 0. The result is
// certified: s is refined until the quotient interval contains no integer
// boundary. FloorAmbiguous after the precision budget is spent (an exact
// rational relation, or the budget is genuinely too small). Constant forms
// fall back to the exact rational floor.
Int certified_floor(const LinearForm& num, const LinearForm& den, CertifiedReal& s,
                    unsigned max_bits = kDefaultMaxBits);

// Certified sign of a linear form: -1, 0, +1. Returns 0 only for the exactly
// zero form; otherwise refines until separated or ComparisonAmbiguous.
int certified_sign(const LinearForm& form, CertifiedReal& s,
                   unsigned max_bits = kDefaultMaxBits);

}  // namespace bcz
