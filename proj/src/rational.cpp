#include "bcz/rational.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bcz {

double ln_mpz(const Int& x) {
    if (x <= 0) throw std::invalid_argument("ln_mpz: positive argument required");
    signed long e = 0;
    double d = mpz_get_d_2exp(&e, x.get_mpz_t());
    return std::log(d) + static_cast<double>(e) * std::log(2.0);
}

Rational::Rational(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("Rational::parse: empty string");
    if (text.find('.') != std::string_view::npos)
        throw std::invalid_argument("Rational::parse: decimal input rejected, use p/q");
    std::string s(text);
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(Int(s));
        }
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        return Rational(num, den);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("Rational::parse: bad rational literal '" + s + "'");
    }
}

Rational& Rational::operator/=(const Rational& o) {
    if (sgn(o.v_) == 0) throw std::invalid_argument("Rational: division by zero");
    v_ /= o.v_;
    return *this;
}

Int Rational::floor() const {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
}

Int Rational::ceil() const {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
}

Int Rational::round_half_up() const {
    // floor(x + 1/2)
    mpq_class shifted = v_ + mpq_class(1, 2);
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
    return q;
}

std::string Rational::str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Interval::Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw std::invalid_argument("Interval: lo > hi");
}

Interval operator+(const Interval& a, const Interval& b) {
    return Interval(a.lo + b.lo, a.hi + b.hi);
}

Interval operator-(const Interval& a, const Interval& b) {
    return Interval(a.lo - b.hi, a.hi - b.lo);
}

Interval operator*(const Interval& a, const Interval& b) {
    Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return Interval(*std::min_element(c, c + 4), *std::max_element(c, c + 4));
}

Interval reciprocal(const Interval& x) {
    if (x.lo.sign() <= 0 && x.hi.sign() >= 0)
        throw std::invalid_argument("Interval: reciprocal of interval containing 0");
    return Interval(Rational(1) / x.hi, Rational(1) / x.lo);
}

Interval operator/(const Interval& a, const Interval& b) {
    return a * reciprocal(b);
}

}  // namespace bcz
