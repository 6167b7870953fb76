#include "bcz/orbit.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "bcz/errors.hpp"

namespace bcz {

OrbitCursor::OrbitCursor(FareyTrianglePoint seed, Direction dir, unsigned max_bits)
    : seed_(std::move(seed)), dir_(dir), max_bits_(max_bits) {
    // pairs of (a_0, a_1) = (seed a, seed b)
    pj_ = -1;
    qj_ = 0;
    pj1_ = 0;
    qj1_ = 1;
    k0_ = floor_step(pj1_, qj1_, pj_, qj_);  // k_0 = k(b,a) = floor((1+a_1)/a_0)
    st_.n = 0;
    st_.f = 0;
    if (dir_ == Direction::Backward) {
        st_.f = k0_ - 3;
        kj_ = k0_;
    }
}

Int OrbitCursor::floor_step(const Int& pp, const Int& qp, const Int& pc, const Int& qc) const {
    if (seed_.is_rational()) {
        const auto& r = seed_.rat();
        Rational prev = Rational(qp) * r.b - Rational(pp) * r.a;
        Rational cur = Rational(qc) * r.b - Rational(pc) * r.a;
        if (cur.sign() <= 0) throw std::logic_error("orbit: nonpositive x-coordinate");
        return ((Rational(1) + prev) / cur).floor();
    }
    return certified_floor(LinearForm(Rational(-pp), Rational(qp + 1)),
                           LinearForm(Rational(-pc), Rational(qc)), *seed_.cfb().s, max_bits_);
}

const OrbitState& OrbitCursor::next() {
    if (dir_ == Direction::Forward) {
        // entering with (pj_, qj_) = a_{n-1}, (pj1_, qj1_) = a_n
        long long n = st_.n + 1;
        Int k = floor_step(pj_, qj_, pj1_, qj1_);
        Int pnew = k * pj1_ - pj_;
        Int qnew = k * qj1_ - qj_;
        st_.n = n;
        st_.f += k - 3;
        st_.k = std::move(k);
        st_.p = pj1_;
        st_.q = qj1_;
        st_.p_up = pnew;
        st_.q_up = qnew;
        pj_ = std::move(pj1_);
        qj_ = std::move(qj1_);
        pj1_ = std::move(pnew);
        qj1_ = std::move(qnew);
        if (crosscheck_) {
            Interval ib = Interval(Rational(st_.k)) * *cb_ - *ca_;
            ca_ = *cb_;
            cb_ = ib;
            if (!value(st_.p, st_.q).overlaps(*ca_))
                throw std::logic_error("orbit cross-check: pair interval and direct image disjoint");
        }
        return st_;
    }
    // backward: entering with (pj_, qj_) = a_j, (pj1_, qj1_) = a_{j+1}, kj_ = k_j, j = -(r-1)
    long long r = st_.n - 1;  // n is negative of emitted count
    Int pnew = kj_ * pj_ - pj1_;
    Int qnew = kj_ * qj_ - qj1_;
    pj1_ = std::move(pj_);
    qj1_ = std::move(qj_);
    pj_ = std::move(pnew);
    qj_ = std::move(qnew);
    kj_ = floor_step(pj1_, qj1_, pj_, qj_);  // k_{-r} = floor((1 + a_{-r+1})/a_{-r})
    st_.n = r;
    st_.f += kj_ - 3;
    st_.k = kj_;
    st_.p = pj_;
    st_.q = qj_;
    st_.p_up = pj1_;
    st_.q_up = qj1_;
    return st_;
}

Interval OrbitCursor::value(const Int& p, const Int& q) const {
    if (seed_.is_rational()) {
        const auto& r = seed_.rat();
        return Interval(Rational(q) * r.b - Rational(p) * r.a);
    }
    return Interval(Rational(q)) -
           Interval(Rational(p)) * reciprocal(seed_.cfb().s->interval());
}

int OrbitCursor::compare(const Int& p1, const Int& q1, const Int& p2, const Int& q2) const {
    if (seed_.is_rational()) {
        const auto& r = seed_.rat();
        Rational d = Rational(q1 - q2) * r.b - Rational(p1 - p2) * r.a;
        return d.sign();
    }
    // a1 - a2 = ((q1-q2) s - (p1-p2))/s with s > 0
    return certified_sign(LinearForm(Rational(p2 - p1), Rational(q1 - q2)), *seed_.cfb().s,
                          max_bits_);
}

void OrbitCursor::enable_crosscheck() {
    if (seed_.is_rational() || dir_ != Direction::Forward)
        throw std::logic_error("cross-check applies to forward cf-backed orbits");
    if (st_.n != 0) throw std::logic_error("cross-check must be enabled before iteration");
    crosscheck_ = true;
    ca_ = seed_.a_interval();
    cb_ = seed_.b_interval();
}

void orbit_iter(const FareyTrianglePoint& pt, long long N, Direction dir,
                const std::function<bool(const OrbitState&)>& cb, unsigned max_bits) {
    OrbitCursor cur(pt, dir, max_bits);
    for (long long i = 0; i < N; ++i)
        if (!cb(cur.next())) return;
}

std::vector<Rational> fhat_series(const FareyTrianglePoint& pt, long long N, unsigned max_bits) {
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(N));
    OrbitCursor cur(pt, Direction::Forward, max_bits);
    FhatTracker tr(cur.k0());
    for (long long n = 1; n <= N; ++n) {
        tr.push(cur.next().k);
        out.push_back(tr.value());
    }
    return out;
}

PeriodicOrbitReport periodic_orbit(unsigned long order, bool keep_itinerary, bool check_farey) {
    if (order < 1) throw std::invalid_argument("periodic_orbit: order >= 1 required");
    PeriodicOrbitReport rep;
    rep.order = order;
    const long long n = static_cast<long long>(order);

    // x-coordinates are q~/n; k = floor((n + q~_{j-1}) / q~_j)
    long long qprev = 1, qcur = n;
    unsigned long long steps = 0, sum = 0;
    while (true) {
        long long k = (n + qprev) / qcur;
        long long qnew = k * qcur - qprev;
        ++steps;
        sum += static_cast<unsigned long long>(k);
        if (keep_itinerary) rep.itinerary.push_back(k);
        qprev = qcur;
        qcur = qnew;
        if (qprev == 1 && qcur == n) break;  // back at (1/n, 1)
        if (steps > (3ULL * order * order) / 4ULL + 16ULL)
            throw std::logic_error("periodic_orbit: failed to return (bug)");
    }
    rep.period = steps;
    rep.itinerary_sum = sum;

    auto tables = arithmetic_tables(order);
    unsigned long long a_n = tables.totient_sum(order);
    rep.period_ok = (steps == a_n);
    rep.hall_shiu_ok = (sum == 3 * a_n - 1);

    if (check_farey) {
        // independent oracle: Farey fractions of order n in (0,1], sorted
        std::vector<std::pair<long long, long long>> fr;  // (p, q)
        for (long long q = 1; q <= n; ++q)
            for (long long p = 1; p <= q; ++p)
                if (std::gcd(p, q) == 1) fr.emplace_back(p, q);
        std::sort(fr.begin(), fr.end(), [](const auto& x, const auto& y) {
            return x.first * y.second < y.first * x.second;
        });
        bool ok = fr.size() == rep.period;
        if (ok) {
            long long qp = 1, qc = n;
            for (std::size_t i = 0; i < fr.size() && ok; ++i) {
                // a_{i+1} = q~_{i+1}/n must equal the denominator of rho_{i+1}
                ok = (qc == fr[i].second);
                long long k = (n + qp) / qc;
                long long qn = k * qc - qp;
                qp = qc;
                qc = qn;
            }
        }
        rep.farey_match_ok = ok;
    }
    return rep;
}

RationalPeriod period_of_rational(const FareyTrianglePoint& pt, bool verify) {
    if (!pt.is_rational())
        throw std::invalid_argument("period_of_rational: rational backend required");
    const auto& r = pt.rat();
    Rational slope = r.b / r.a;
    Int q = slope.den();
    Int n_int = (Rational(q) / r.a).floor();
    if (!n_int.fits_ulong_p() || n_int < 1)
        throw std::invalid_argument("period_of_rational: order out of range");
    RationalPeriod out;
    out.n = n_int.get_ui();
    out.period = arithmetic_tables(out.n).totient_sum(out.n);
    if (verify) {
        Rational aprev = r.a, acur = r.b;
        unsigned long long first_return = 0;
        for (unsigned long long m = 1; m <= out.period; ++m) {
            Int k = ((Rational(1) + aprev) / acur).floor();
            Rational anew = Rational(k) * acur - aprev;
            aprev = acur;
            acur = anew;
            if (aprev == r.a && acur == r.b) {
                first_return = m;
                break;
            }
        }
        out.verified = (first_return == out.period);
    }
    return out;
}

}  // namespace bcz
