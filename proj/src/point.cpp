#include "bcz/point.hpp"

#include <stdexcept>

#include "bcz/errors.hpp"

namespace bcz {

namespace {

// Forms (1+x)*s and y*s for coordinates x = (qx s - px)/s, y = (qy s - py)/s:
// (1+x)/y = ((1+qx) s - px) / (qy s - py).
LinearForm one_plus_form(const Int& p, const Int& q) {
    return LinearForm(Rational(-p), Rational(q + 1));
}
LinearForm coord_form(const Int& p, const Int& q) {
    return LinearForm(Rational(-p), Rational(q));
}

}  // namespace

FareyTrianglePoint FareyTrianglePoint::rational(Rational a, Rational b) {
    bool ok = a.sign() > 0 && b.sign() > 0 && a <= Rational(1) && b <= Rational(1) &&
              a + b > Rational(1);
    if (!ok)
        throw std::invalid_argument("FareyTrianglePoint: (" + a.str() + "," + b.str() +
                                    ") outside the Farey triangle");
    return FareyTrianglePoint(RationalBacked{std::move(a), std::move(b)});
}

FareyTrianglePoint FareyTrianglePoint::from_slope(CfPtr cf) {
    if (!cf) throw std::invalid_argument("from_slope: null continued fraction");
    if (cf->finite_length())
        throw std::invalid_argument(
            "from_slope: finite continued fraction defines a rational slope; "
            "use the rational backend");
    if (cf->coefficient(0) < 1)
        throw SlopeOutOfRange("from_slope: c_0 >= 1 required so that s > 1");
    CfBacked c;
    c.cf = cf;
    c.s = std::make_shared<CertifiedReal>(cf);
    c.pa = -1;
    c.qa = 0;  // a = (0*s + 1)/s = 1/s
    c.pb = 0;
    c.qb = 1;  // b = s/s = 1
    return FareyTrianglePoint(std::move(c));
}

FareyTrianglePoint point_from_slope(CfPtr cf) { return FareyTrianglePoint::from_slope(std::move(cf)); }

Interval FareyTrianglePoint::a_interval() const {
    if (is_rational()) return Interval(rat().a);
    const CfBacked& c = cfb();
    // (q s - p)/s = q - p/s
    return Interval(Rational(c.qa)) - Interval(Rational(c.pa)) * reciprocal(c.s->interval());
}

Interval FareyTrianglePoint::b_interval() const {
    if (is_rational()) return Interval(rat().b);
    const CfBacked& c = cfb();
    return Interval(Rational(c.qb)) - Interval(Rational(c.pb)) * reciprocal(c.s->interval());
}

FareyTrianglePoint FareyTrianglePoint::deep_clone() const {
    if (is_rational()) return *this;
    CfBacked c = cfb();
    c.s = std::make_shared<CertifiedReal>(*c.s);
    return FareyTrianglePoint(std::move(c));
}

bool operator==(const FareyTrianglePoint& x, const FareyTrianglePoint& y) {
    if (x.is_rational() != y.is_rational()) return false;
    if (x.is_rational()) return x.rat().a == y.rat().a && x.rat().b == y.rat().b;
    const auto& cx = x.cfb();
    const auto& cy = y.cfb();
    return cx.cf == cy.cf && cx.pa == cy.pa && cx.qa == cy.qa && cx.pb == cy.pb &&
           cx.qb == cy.qb;
}

Int itinerary_k(const FareyTrianglePoint& pt, unsigned max_bits) {
    if (pt.is_rational()) {
        const auto& r = pt.rat();
        return ((Rational(1) + r.a) / r.b).floor();
    }
    const auto& c = pt.cfb();
    return certified_floor(one_plus_form(c.pa, c.qa), coord_form(c.pb, c.qb), *c.s, max_bits);
}

FareyTrianglePoint bcz_step(const FareyTrianglePoint& pt, unsigned max_bits) {
    Int k = itinerary_k(pt, max_bits);
    if (pt.is_rational()) {
        const auto& r = pt.rat();
        return FareyTrianglePoint::rational(r.b, Rational(k) * r.b - r.a);
    }
    FareyTrianglePoint out = pt;
    auto& c = out.cfb();
    Int pb = k * c.pb - c.pa;
    Int qb = k * c.qb - c.qa;
    c.pa = c.pb;
    c.qa = c.qb;
    c.pb = std::move(pb);
    c.qb = std::move(qb);
    return out;
}

FareyTrianglePoint bcz_inverse(const FareyTrianglePoint& pt, unsigned max_bits) {
    if (pt.is_rational()) {
        const auto& r = pt.rat();
        Int k = ((Rational(1) + r.b) / r.a).floor();
        return FareyTrianglePoint::rational(Rational(k) * r.a - r.b, r.a);
    }
    const auto& c = pt.cfb();
    Int k = certified_floor(one_plus_form(c.pb, c.qb), coord_form(c.pa, c.qa), *c.s, max_bits);
    FareyTrianglePoint out = pt;
    auto& oc = out.cfb();
    Int pa = k * c.pa - c.pb;
    Int qa = k * c.qa - c.qb;
    oc.pb = c.pa;
    oc.qb = c.qa;
    oc.pa = std::move(pa);
    oc.qa = std::move(qa);
    return out;
}

Interval return_time(const FareyTrianglePoint& pt) {
    if (pt.is_rational()) {
        const auto& r = pt.rat();
        return Interval(Rational(1) / (r.a * r.b));
    }
    return reciprocal(pt.a_interval() * pt.b_interval());
}

Rational khat(const FareyTrianglePoint& pt, unsigned max_bits) {
    Int ka, kb;
    if (pt.is_rational()) {
        const auto& r = pt.rat();
        ka = ((Rational(1) + r.a) / r.b).floor();
        kb = ((Rational(1) + r.b) / r.a).floor();
    } else {
        const auto& c = pt.cfb();
        ka = certified_floor(one_plus_form(c.pa, c.qa), coord_form(c.pb, c.qb), *c.s, max_bits);
        kb = certified_floor(one_plus_form(c.pb, c.qb), coord_form(c.pa, c.qa), *c.s, max_bits);
    }
    return Rational(ka + kb, 2);
}

}  // namespace bcz
