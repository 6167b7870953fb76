#include "bcz/certified.hpp"

#include <stdexcept>
#include <utility>

#include "bcz/errors.hpp"

namespace bcz {

CertifiedReal::CertifiedReal(CfPtr cf) : cf_(std::move(cf)) {
    if (!cf_) throw std::invalid_argument("CertifiedReal: null continued fraction");
    auto len = cf_->finite_length();
    hi_index_ = (len && *len < 2) ? 0 : 1;
    cf_->convergent(hi_index_);  // force materialization, validates the source
}

Interval CertifiedReal::interval() const {
    Convergent hi = cf_->convergent(hi_index_);
    if (hi_index_ == 0) return Interval(hi.value());
    Convergent lo = cf_->convergent(hi_index_ - 1);
    // even-index convergents sit below the value, odd ones above
    if (hi_index_ % 2 == 0) std::swap(lo, hi);
    return Interval(lo.value(), hi.value());
}

bool CertifiedReal::refine_once() {
    auto len = cf_->finite_length();
    if (len && hi_index_ + 1 >= *len) return false;
    cf_->convergent(hi_index_ + 1);
    ++hi_index_;
    return true;
}

void CertifiedReal::refine_to(const Rational& eps) {
    if (eps.sign() <= 0) throw std::invalid_argument("refine_to: eps > 0 required");
    while (interval().width() > eps) {
        if (!refine_once())
            throw StreamExhausted(cf_->label() +
                                  ": finite continued fraction cannot reach eps=" + eps.str());
    }
}

CertifiedReal refine(CertifiedReal x, const Rational& eps) {
    x.refine_to(eps);
    return x;
}

Interval LinearForm::eval(const Interval& s) const {
    Rational v1 = alpha + beta * s.lo;
    Rational v2 = alpha + beta * s.hi;
    return v1 <= v2 ? Interval(v1, v2) : Interval(v2, v1);
}

namespace {

struct IntForm {
    Int a, b;  // a + b*s, integer coefficients
};

// Scale num and den by the common positive factor clearing all denominators;
// the quotient is unchanged.
std::pair<IntForm, IntForm> scale_to_integers(const LinearForm& num, const LinearForm& den) {
    Int l(1);
    for (const Rational* r : {&num.alpha, &num.beta, &den.alpha, &den.beta}) {
        Int d = r->den();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    auto scaled = [&l](const Rational& r) { return Int(r.num() * (l / r.den())); };
    return {{scaled(num.alpha), scaled(num.beta)}, {scaled(den.alpha), scaled(den.beta)}};
}

bool over_budget(const CertifiedReal& s, unsigned max_bits) {
    Convergent hi = s.cf().convergent(s.terms_consumed() - 1);
    return mpz_sizeinbase(hi.q.get_mpz_t(), 2) > max_bits;
}

}  // namespace

Int certified_floor(const LinearForm& num, const LinearForm& den, CertifiedReal& s,
                    unsigned max_bits) {
    auto [n, d] = scale_to_integers(num, den);
    if (d.b == 0) {
        if (d.a <= 0) throw std::invalid_argument("certified_floor: denominator not positive");
        if (n.b == 0) {
            // exact rational quotient
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), n.a.get_mpz_t(), d.a.get_mpz_t());
            return q;
        }
    }
    while (true) {
        Interval iv = s.interval();
        const Int& pl = iv.lo.num();
        const Int& ql = iv.lo.den();
        const Int& ph = iv.hi.num();
        const Int& qh = iv.hi.den();
        Int d1 = d.a * ql + d.b * pl;
        Int d2 = d.a * qh + d.b * ph;
        if (d1 > 0 && d2 > 0) {
            Int n1 = n.a * ql + n.b * pl;
            Int n2 = n.a * qh + n.b * ph;
            Int f1, f2;
            mpz_fdiv_q(f1.get_mpz_t(), n1.get_mpz_t(), d1.get_mpz_t());
            mpz_fdiv_q(f2.get_mpz_t(), n2.get_mpz_t(), d2.get_mpz_t());
            if (f1 == f2) return f1;
        } else if (d1 < 0 && d2 < 0) {
            throw std::invalid_argument("certified_floor: denominator not positive");
        }
        if (over_budget(s, max_bits))
            throw FloorAmbiguous("certified_floor: quotient straddles an integer at " +
                                 std::to_string(max_bits) + " bits");
        if (!s.refine_once())
            throw FloorAmbiguous(
                "certified_floor: finite continued fraction exhausted while ambiguous "
                "(rational slope where an irrational was required)");
    }
}

int certified_sign(const LinearForm& form, CertifiedReal& s, unsigned max_bits) {
    if (form.beta.sign() == 0) return form.alpha.sign();
    Int a = form.alpha.num() * form.beta.den();
    Int b = form.beta.num() * form.alpha.den();
    // sign(alpha + beta s) = sign(a + b s), a b integers
    while (true) {
        Interval iv = s.interval();
        Int v1 = a * iv.lo.den() + b * iv.lo.num();
        Int v2 = a * iv.hi.den() + b * iv.hi.num();
        int s1 = sgn(v1), s2 = sgn(v2);
        if (s1 > 0 && s2 > 0) return 1;
        if (s1 < 0 && s2 < 0) return -1;
        if (over_budget(s, max_bits))
            throw ComparisonAmbiguous("certified_sign: cannot separate from zero at " +
                                      std::to_string(max_bits) + " bits");
        if (!s.refine_once()) {
            // finite source: the last convergent is the exact value
            Convergent last = s.cf().convergent(s.terms_consumed() - 1);
            return sgn(Int(a * last.q + b * last.p));
        }
    }
}

}  // namespace bcz
