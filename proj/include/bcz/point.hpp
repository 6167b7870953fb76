#pragma once

#include <memory>
#include <variant>

#include "bcz/certified.hpp"
#include "bcz/contfrac.hpp"
#include "bcz/rational.hpp"

namespace bcz {

// A point of the Farey triangle  Omega = {(a,b) : a,b in (0,1], a+b > 1}.
//
// Rational backend: exact coordinates.
// CF backend: the point is reached from a seed (1/s, 1) with s = [c0;c1,...]
// irrational; coordinates are tracked through integer pairs,
//   x = (q s - p)/s,
// so every itinerary evaluation reduces to one certified floor of a ratio of
// linear forms in s. The integer pairs are exact; intervals enter only
// through that floor.
class FareyTrianglePoint {
  public:
    struct RationalBacked {
        Rational a, b;
    };
    struct CfBacked {
        CfPtr cf;
        std::shared_ptr<CertifiedReal> s;
        Int pa, qa;  // a = (qa s - pa)/s
        Int pb, qb;  // b = (qb s - pb)/s
    };

    // Validates Omega membership exactly.
    static FareyTrianglePoint rational(Rational a, Rational b);

    // (a, b) = (1/s, 1). SlopeOutOfRange if c_0 = 0; a finite CF is rejected
    // (rational slopes belong to the rational backend).
    static FareyTrianglePoint from_slope(CfPtr cf);

    bool is_rational() const { return std::holds_alternative<RationalBacked>(v_); }
    const RationalBacked& rat() const { return std::get<RationalBacked>(v_); }
    const CfBacked& cfb() const { return std::get<CfBacked>(v_); }
    CfBacked& cfb() { return std::get<CfBacked>(v_); }

    Interval a_interval() const;
    Interval b_interval() const;

    // Independent refinement state for another thread.
    FareyTrianglePoint deep_clone() const;

    friend bool operator==(const FareyTrianglePoint& x, const FareyTrianglePoint& y);

  private:
    explicit FareyTrianglePoint(RationalBacked r) : v_(std::move(r)) {}
    explicit FareyTrianglePoint(CfBacked c) : v_(std::move(c)) {}
    std::variant<RationalBacked, CfBacked> v_;
};

FareyTrianglePoint point_from_slope(CfPtr cf);

// k(a,b) = floor((1+a)/b); exact on the rational backend, certified on cf.
Int itinerary_k(const FareyTrianglePoint& pt, unsigned max_bits = kDefaultMaxBits);

// T(a,b) = (b, -a + k(a,b) b)
FareyTrianglePoint bcz_step(const FareyTrianglePoint& pt, unsigned max_bits = kDefaultMaxBits);

// T^{-1}(a,b) = (k(b,a) a - b, a); bcz_step(bcz_inverse(pt)) == pt
FareyTrianglePoint bcz_inverse(const FareyTrianglePoint& pt, unsigned max_bits = kDefaultMaxBits);

// R(a,b) = 1/(ab); exact rational (point interval) on the rational backend.
Interval return_time(const FareyTrianglePoint& pt);

// khat = (k(a,b) + k(b,a))/2, a half-integer; k(b,a) = k(T^{-1}(a,b)).
Rational khat(const FareyTrianglePoint& pt, unsigned max_bits = kDefaultMaxBits);

}  // namespace bcz
