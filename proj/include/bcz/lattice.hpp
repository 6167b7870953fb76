#pragma once

#include <cstddef>
#include <vector>

#include "bcz/point.hpp"
#include "bcz/rational.hpp"

namespace bcz {

struct Vec2 {
    Rational x, y;
};

// Rank-2 lattice with exact rational basis, determinant normalized to +1.
struct Lattice2 {
    Vec2 u, v;

    Lattice2(Vec2 u_, Vec2 v_);  // throws SingularBasis on det 0, flips sign to +1
    Rational det() const { return u.x * v.y - u.y * v.x; }
};

// Lambda_{a,b}: basis (a, 0), (b, 1/a). Rational backend only.
Lattice2 lattice_of_point(const FareyTrianglePoint& pt);

// h_t: (x, y) -> (x, y - t x); x-coordinates of all lattice points unchanged.
Lattice2 horocycle(const Lattice2& lat, const Rational& t);

// Same lattice iff the change-of-basis matrix is integral with determinant +-1.
bool lattice_eq(const Lattice2& l1, const Lattice2& l2);

// Eq. (1.1): Lambda_{T(a,b)} = h_{R(a,b)} Lambda_{a,b}, checked exactly.
bool first_return_check(const FareyTrianglePoint& pt);

struct PrimitivePoint {
    Int u, v;       // basis coordinates: u*(a,0) + v*(b,1/a)
    Rational x, y;  // plane coordinates
};

// The first m primitive points of the lattice in (0,1] x R+ sorted by
// strictly increasing slope; the i-th x-coordinate is the orbit value a_i.
// Enumeration budget guards the v-range search.
std::vector<PrimitivePoint> primitive_points_by_slope(const FareyTrianglePoint& pt,
                                                      std::size_t m,
                                                      std::size_t budget = 1u << 22);

struct Alpha1Result {
    Rational norm_sq;  // |shortest nonzero vector|^2, exact
    double value;      // alpha_1 = 1/|v*|
};

// alpha_1(L) = sup 1/|v| over nonzero lattice vectors, via Lagrange-Gauss
// reduction with exact squared norms.
Alpha1Result alpha1(const Lattice2& lat);

// Test oracle: shortest norm^2 by brute-force enumeration of |i|,|j| <= range.
Rational alpha1_bruteforce_norm_sq(const Lattice2& lat, long range);

}  // namespace bcz
