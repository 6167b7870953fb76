#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace bcz {

using Int = mpz_class;

// Exact arbitrary-precision fraction. Always stored reduced with positive
// denominator; every operation is exact, there is no rounding anywhere.
class Rational {
  public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}  // NOLINT: implicit by design, mirrors integer literals
    template <typename U>        // mpz_class and its expression templates
    Rational(const __gmp_expr<mpz_t, U>& n) : v_(mpz_class(n)) {}
    Rational(const Int& num, const Int& den);
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    // Accepts "p/q" or "p" with optional sign. Decimal notation is rejected.
    static Rational parse(std::string_view text);

    const mpq_class& raw() const { return v_; }
    Int num() const { return Int(v_.get_num()); }
    Int den() const { return Int(v_.get_den()); }

    bool is_integer() const { return v_.get_den() == 1; }
    Int floor() const;
    Int ceil() const;
    // Nearest integer, ties round half up.
    Int round_half_up() const;

    int sign() const { return sgn(v_); }
    double to_double() const { return v_.get_d(); }
    std::string str() const;

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  private:
    mpq_class v_;
};

inline Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

// Natural log of a positive big integer, accurate to double precision.
double ln_mpz(const Int& x);

// Closed interval [lo, hi] with exact rational endpoints. Endpoint arithmetic
// is exact, so containment of the true value is preserved without rounding.
struct Interval {
    Rational lo, hi;

    Interval() = default;
    Interval(Rational point) : lo(point), hi(point) {}  // NOLINT
    Interval(Rational l, Rational h);

    bool is_point() const { return lo == hi; }
    Rational width() const { return hi - lo; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool overlaps(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
    double mid_double() const { return ((lo + hi) / Rational(2)).to_double(); }

    friend Interval operator+(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a, const Interval& b);
    friend Interval operator*(const Interval& a, const Interval& b);
    // Requires 0 outside [b.lo, b.hi].
    friend Interval operator/(const Interval& a, const Interval& b);
};

Interval reciprocal(const Interval& x);

}  // namespace bcz
