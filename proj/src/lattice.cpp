#include "bcz/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "bcz/errors.hpp"

namespace bcz {

Lattice2::Lattice2(Vec2 u_, Vec2 v_) : u(std::move(u_)), v(std::move(v_)) {
    Rational d = det();
    if (d.sign() == 0) throw SingularBasis("Lattice2: degenerate basis");
    if (d.sign() < 0) std::swap(u, v);
    if (det() != Rational(1))
        throw std::invalid_argument("Lattice2: determinant must be +-1, got " + d.str());
}

Lattice2 lattice_of_point(const FareyTrianglePoint& pt) {
    if (!pt.is_rational())
        throw std::invalid_argument("lattice_of_point: rational backend required");
    const auto& r = pt.rat();
    return Lattice2({r.a, Rational(0)}, {r.b, Rational(1) / r.a});
}

Lattice2 horocycle(const Lattice2& lat, const Rational& t) {
    auto shear = [&t](const Vec2& w) { return Vec2{w.x, w.y - t * w.x}; };
    return Lattice2(shear(lat.u), shear(lat.v));
}

bool lattice_eq(const Lattice2& l1, const Lattice2& l2) {
    // columns of B2^{-1} B1 with det B2 = 1
    Rational m00 = l2.v.y * l1.u.x - l2.v.x * l1.u.y;
    Rational m10 = -l2.u.y * l1.u.x + l2.u.x * l1.u.y;
    Rational m01 = l2.v.y * l1.v.x - l2.v.x * l1.v.y;
    Rational m11 = -l2.u.y * l1.v.x + l2.u.x * l1.v.y;
    for (const Rational* e : {&m00, &m10, &m01, &m11})
        if (!e->is_integer()) return false;
    Rational d = m00 * m11 - m01 * m10;
    return d == Rational(1) || d == Rational(-1);
}

bool first_return_check(const FareyTrianglePoint& pt) {
    const auto& r = pt.rat();
    Rational t = Rational(1) / (r.a * r.b);
    return lattice_eq(lattice_of_point(bcz_step(pt)), horocycle(lattice_of_point(pt), t));
}

std::vector<PrimitivePoint> primitive_points_by_slope(const FareyTrianglePoint& pt,
                                                      std::size_t m, std::size_t budget) {
    if (!pt.is_rational())
        throw std::invalid_argument("primitive_points_by_slope: rational backend required");
    if (m == 0) return {};
    const Rational a = pt.rat().a;
    const Rational b = pt.rat().b;
    const Rational one(1);

    // Candidates u*(a,0) + v*(b,1/a) with x in (0,1], v >= 1. Any point with
    // v > V has slope y/x >= v/a > V/a, so once the m smallest slopes among
    // v <= V all stay below V/a the list is complete.
    std::vector<PrimitivePoint> found;
    std::size_t spent = 0;
    for (Int v(1);; ++v) {
        // u range: 0 < u a + v b <= 1
        Rational vb = Rational(v) * b;
        Int ulo = ((-vb) / a).floor() + 1;
        Int uhi = ((one - vb) / a).floor();
        for (Int u = ulo; u <= uhi; ++u) {
            if (++spent > budget)
                throw BudgetExceeded("primitive_points_by_slope: enumeration budget reached");
            Int g;
            mpz_gcd(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t());
            if (g != 1) continue;
            Rational x = Rational(u) * a + vb;
            if (x.sign() <= 0 || x > one) continue;
            found.push_back({u, Int(v), x, Rational(v) / a});
        }
        if (found.size() >= m) {
            std::sort(found.begin(), found.end(), [](const PrimitivePoint& p1, const PrimitivePoint& p2) {
                // slope compare: y1/x1 < y2/x2 with x, y > 0
                return p1.y * p2.x < p2.y * p1.x;
            });
            // certified cut: m-th slope must beat anything with v > V
            Rational v_over_a = Rational(Int(v)) / a;
            const PrimitivePoint& last = found[m - 1];
            if (last.y < v_over_a * last.x) {
                found.resize(m);
                return found;
            }
        }
    }
}

namespace {

Rational dot(const Vec2& w1, const Vec2& w2) { return w1.x * w2.x + w1.y * w2.y; }
Rational norm_sq(const Vec2& w) { return dot(w, w); }

}  // namespace

Alpha1Result alpha1(const Lattice2& lat) {
    // Lagrange-Gauss reduction; squared norms stay rational, no square roots.
    Vec2 u = lat.u, v = lat.v;
    if (norm_sq(u) > norm_sq(v)) std::swap(u, v);
    while (true) {
        Int mu = (dot(u, v) / norm_sq(u)).round_half_up();
        Vec2 w{v.x - Rational(mu) * u.x, v.y - Rational(mu) * u.y};
        if (norm_sq(w) >= norm_sq(u)) {
            v = w;
            break;
        }
        v = u;
        u = w;
    }
    Rational best = norm_sq(u);
    // u is shortest after reduction; u+-v close the 2D cases
    for (const Vec2& cand : {v, Vec2{u.x + v.x, u.y + v.y}, Vec2{u.x - v.x, u.y - v.y}}) {
        Rational n = norm_sq(cand);
        if (n.sign() > 0 && n < best) best = n;
    }
    Alpha1Result res;
    res.norm_sq = best;
    res.value = 1.0 / std::sqrt(best.to_double());
    return res;
}

Rational alpha1_bruteforce_norm_sq(const Lattice2& lat, long range) {
    Rational best;
    bool first = true;
    for (long i = -range; i <= range; ++i) {
        for (long j = -range; j <= range; ++j) {
            if (i == 0 && j == 0) continue;
            Vec2 w{Rational(i) * lat.u.x + Rational(j) * lat.v.x,
                   Rational(i) * lat.u.y + Rational(j) * lat.v.y};
            Rational n = norm_sq(w);
            if (first || n < best) {
                best = n;
                first = false;
            }
        }
    }
    return best;
}

}  // namespace bcz
