#include "bcz/excursion.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "bcz/errors.hpp"

namespace bcz {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr unsigned long long kCountGuard = 200000000ULL;  // desk-scale safety rail
}  // namespace

ValueWindow::ValueWindow(std::vector<Rational> values) : vals_(std::move(values)) {}

ValueWindow::ValueWindow(std::vector<std::pair<Int, Int>> pairs, FareyTrianglePoint seed,
                         unsigned max_bits)
    : pairs_(std::move(pairs)),
      seed_(std::make_shared<FareyTrianglePoint>(std::move(seed))),
      max_bits_(max_bits) {}

std::size_t ValueWindow::size() const { return vals_.empty() ? pairs_.size() : vals_.size(); }

int ValueWindow::compare(std::size_t i, std::size_t j) const {
    if (!vals_.empty()) {
        if (vals_[i] < vals_[j]) return -1;
        return vals_[i] == vals_[j] ? 0 : 1;
    }
    const auto& [pi, qi] = pairs_[i];
    const auto& [pj, qj] = pairs_[j];
    if (seed_->is_rational()) {
        const auto& r = seed_->rat();
        return (Rational(qi - qj) * r.b - Rational(pi - pj) * r.a).sign();
    }
    return certified_sign(LinearForm(Rational(pj - pi), Rational(qi - qj)), *seed_->cfb().s,
                          max_bits_);
}

Interval ValueWindow::value(std::size_t i) const {
    if (!vals_.empty()) return Interval(vals_[i]);
    const auto& [p, q] = pairs_[i];
    if (seed_->is_rational()) {
        const auto& r = seed_->rat();
        return Interval(Rational(q) * r.b - Rational(p) * r.a);
    }
    return Interval(Rational(q)) - Interval(Rational(p)) * reciprocal(seed_->cfb().s->interval());
}

ValueWindow ValueWindow::thread_clone() const {
    ValueWindow w = *this;
    if (seed_ && !seed_->is_rational())
        w.seed_ = std::make_shared<FareyTrianglePoint>(seed_->deep_clone());
    return w;
}

namespace {

// Excursions starting at s. The interior minimum only decreases as t grows,
// so once it drops to or below a_s no further t can qualify.
void excursions_from(const ValueWindow& w, std::size_t s, std::vector<Excursion>& out) {
    std::size_t n = w.size();
    if (s + 1 >= n) return;
    out.push_back({s, s + 1});  // empty interior
    std::size_t min_idx = s + 1;
    for (std::size_t t = s + 2; t < n; ++t) {
        int ms = w.compare(min_idx, s);
        if (ms <= 0) break;
        if (w.compare(min_idx, t) > 0) out.push_back({s, t});
        if (w.compare(t, min_idx) < 0) min_idx = t;
    }
}

std::vector<Excursion> between_records(const ValueWindow& w) {
    std::vector<Excursion> out;
    std::size_t rec = 0;
    for (std::size_t t = 1; t < w.size(); ++t) {
        if (w.compare(t, rec) < 0) {
            out.push_back({rec, t});
            rec = t;
        }
    }
    return out;
}

}  // namespace

std::vector<Excursion> detect_excursions_serial(const ValueWindow& window, ExcursionMode mode) {
    if (mode == ExcursionMode::BetweenRecords) return between_records(window);
    std::vector<Excursion> out;
    for (std::size_t s = 0; s + 1 < window.size(); ++s) excursions_from(window, s, out);
    return out;
}

std::vector<Excursion> detect_excursions(const ValueWindow& window, ExcursionMode mode) {
    if (mode == ExcursionMode::BetweenRecords) return between_records(window);
    std::size_t n = window.size();
    if (n < 2) return {};
    std::vector<std::vector<Excursion>> per_s(n - 1);
#pragma omp parallel
    {
        ValueWindow local = window.thread_clone();
#pragma omp for schedule(dynamic, 16)
        for (long long s = 0; s < static_cast<long long>(n - 1); ++s)
            excursions_from(local, static_cast<std::size_t>(s), per_s[s]);
    }
    std::vector<Excursion> out;
    for (auto& v : per_s) out.insert(out.end(), v.begin(), v.end());
    return out;
}

std::vector<Excursion> detect_excursions(const std::vector<Rational>& window, ExcursionMode mode) {
    return detect_excursions(ValueWindow(window), mode);
}

namespace {

void check_unit_box(const Rational& a, const Rational& b) {
    if (a.sign() <= 0 || b.sign() <= 0 || a > Rational(1) || b > Rational(1))
        throw std::invalid_argument("coprime_pair_count: a, b in (0,1] required");
}

long long u_limit(const Rational& a, const Rational& b) {
    if (b == Rational(1)) return 0;
    Int u = ((Rational(1) - b) / a).floor();
    if (u <= 0) return 0;
    if (!u.fits_slong_p() || u.get_si() > static_cast<long>(kCountGuard))
        throw BudgetExceeded("coprime_pair_count: enumeration too large");
    return u.get_si();
}

unsigned long long coprime_row(const Rational& a, const Rational& b, long long u) {
    Int vmax = ((Rational(1) - Rational(static_cast<long>(u)) * a) / b).floor();
    if (vmax <= 0) return 0;
    if (!vmax.fits_slong_p()) throw BudgetExceeded("coprime_pair_count: row too large");
    long long vm = vmax.get_si();
    unsigned long long cnt = 0;
    for (long long v = 1; v <= vm; ++v)
        if (std::gcd(u, v) == 1) ++cnt;
    return cnt;
}

}  // namespace

unsigned long long coprime_pair_count_serial(const Rational& a, const Rational& b) {
    check_unit_box(a, b);
    unsigned long long total = 0;
    long long umax = u_limit(a, b);
    for (long long u = 1; u <= umax; ++u) total += coprime_row(a, b, u);
    return total;
}

unsigned long long coprime_pair_count(const Rational& a, const Rational& b) {
    check_unit_box(a, b);
    long long umax = u_limit(a, b);
    unsigned long long total = 0;
#pragma omp parallel for schedule(dynamic, 8) reduction(+ : total)
    for (long long u = 1; u <= umax; ++u) total += coprime_row(a, b, u);
    return total;
}

unsigned long long coprime_pair_count_mobius(const Rational& a, const Rational& b) {
    check_unit_box(a, b);
    Int dmax_i = (Rational(1) / (a + b)).floor();
    if (dmax_i <= 0) return 0;
    if (!dmax_i.fits_slong_p() || dmax_i.get_si() > static_cast<long>(kCountGuard))
        throw BudgetExceeded("coprime_pair_count_mobius: d range too large");
    long long dmax = dmax_i.get_si();
    auto tables = arithmetic_tables(static_cast<std::size_t>(dmax));
    long long total = 0;
    for (long long d = 1; d <= dmax; ++d) {
        int mu = tables.mobius[static_cast<std::size_t>(d)];
        if (mu == 0) continue;
        Rational inv_d(Int(1), Int(static_cast<long>(d)));
        // all positive pairs with u a + v b <= 1/d
        Int umax_i = ((inv_d - b) / a).floor();
        if (umax_i <= 0) continue;
        long long umax = umax_i.get_si();
        long long inner = 0;
        for (long long u = 1; u <= umax; ++u) {
            Int vmax = ((inv_d - Rational(static_cast<long>(u)) * a) / b).floor();
            if (vmax > 0) inner += vmax.get_si();
        }
        total += mu * inner;
    }
    return static_cast<unsigned long long>(total);
}

unsigned long long coprime_pair_count_certified(const FareyTrianglePoint& pt,
                                                const std::pair<Int, Int>& end_s,
                                                const std::pair<Int, Int>& end_t,
                                                unsigned max_bits) {
    if (pt.is_rational()) {
        const auto& r = pt.rat();
        auto val = [&r](const std::pair<Int, Int>& pr) {
            return Rational(pr.second) * r.b - Rational(pr.first) * r.a;
        };
        return coprime_pair_count(val(end_s), val(end_t));
    }
    auto& s = *pt.cfb().s;
    const auto& [ps, qs] = end_s;
    const auto& [pt_, qt] = end_t;
    // u_max = floor((1 - a_t)/a_s) with a = (q s - p)/s
    Int umax = certified_floor(LinearForm(Rational(pt_), Rational(1 - qt)),
                               LinearForm(Rational(-ps), Rational(qs)), s, max_bits);
    if (umax <= 0) return 0;
    if (!umax.fits_slong_p() || umax.get_si() > static_cast<long>(kCountGuard))
        throw BudgetExceeded("coprime_pair_count_certified: enumeration too large");
    unsigned long long total = 0;
    long um = umax.get_si();
    for (long u = 1; u <= um; ++u) {
        Int vmax = certified_floor(LinearForm(Rational(u * ps), Rational(1 - u * qs)),
                                   LinearForm(Rational(-pt_), Rational(qt)), s, max_bits);
        if (vmax <= 0) continue;
        long vm = vmax.get_si();
        for (long v = 1; v <= vm; ++v)
            if (std::gcd(u, v) == 1) ++total;
    }
    return total;
}

LengthEstimate excursion_length_estimate(double a, double b) {
    double ia = 1.0 / a, ib = 1.0 / b;
    return {3.0 / (kPi * kPi) * ia * ib, std::max(ia, ib) * std::log(std::min(ia, ib))};
}

LengthEstimate excursion_length_estimate(const Rational& a, const Rational& b) {
    return excursion_length_estimate(a.to_double(), b.to_double());
}

std::vector<DeepIndex> deepest_subsequence_bruteforce(OrbitCursor& cursor, long long N) {
    if (cursor.state().n != 0 || cursor.direction() != Direction::Forward)
        throw std::invalid_argument("deepest_subsequence_bruteforce: fresh forward cursor required");
    std::vector<DeepIndex> out;
    Int bp(-1), bq(0);  // a_0
    for (long long i = 0; i < N; ++i) {
        const OrbitState& st = cursor.next();
        if (cursor.compare(st.p, st.q, bp, bq) < 0) {
            DeepIndex d;
            d.i = out.size();
            d.n = st.n;
            d.p = st.p;
            d.q = st.q;
            d.value = cursor.value(st.p, st.q);
            d.f_at = st.f;
            out.push_back(std::move(d));
            bp = st.p;
            bq = st.q;
        }
    }
    return out;
}

std::vector<DeepIndex> deepest_subsequence_formula(const FareyTrianglePoint& pt, std::size_t I) {
    if (pt.is_rational())
        throw std::invalid_argument("deepest_subsequence_formula: cf backend required");
    const auto& cf = *pt.cfb().cf;
    auto& s = *pt.cfb().s;
    std::vector<DeepIndex> out;
    out.reserve(I);
    std::size_t k = 0;
    Int c_lo(0);                      // c'_k
    Int c_hi = cf.coefficient(2);     // c'_{k+1}
    for (std::size_t i = 0; i < I; ++i) {
        DeepIndex d;
        d.i = i;
        if (i == 0) {
            Convergent c0 = cf.convergent(0);
            d.p = c0.p;
            d.q = c0.q;
            d.block = 0;
            d.offset = 0;
        } else {
            while (Int(static_cast<long>(i)) > c_hi) {
                c_lo = c_hi;
                ++k;
                c_hi += cf.coefficient(2 * k + 2);
            }
            Int m = Int(i) - c_lo;
            Convergent even = cf.convergent(2 * k);
            Convergent odd = cf.convergent(2 * k + 1);
            d.p = m * odd.p + even.p;
            d.q = m * odd.q + even.q;
            d.block = k;
            d.offset = m;
        }
        d.value = Interval(Rational(d.q)) - Interval(Rational(d.p)) * reciprocal(s.interval());
        out.push_back(std::move(d));
    }
    return out;
}

DeepScan block_markers(const FareyTrianglePoint& pt, std::size_t K, long long max_steps,
                       bool collect_markers) {
    if (pt.is_rational())
        throw std::invalid_argument("block_markers: cf backend required");
    const auto& cf = *pt.cfb().cf;
    OrbitCursor cursor(pt, Direction::Forward);

    // a'_j = |q'_j b - p'_j a| as a double, with s refined until the sign is
    // pinned and the interval is relatively tight.
    auto a_prime = [&](std::size_t j) {
        Convergent c = cf.convergent(j);
        for (int round = 0; round < 512; ++round) {
            Interval siv = pt.cfb().s->interval();
            Interval iv = Interval(Rational(c.q)) - Interval(Rational(c.p)) * reciprocal(siv);
            if (iv.lo.sign() == iv.hi.sign()) {
                Rational mid = abs(iv.lo + iv.hi) * Rational(Int(1), Int(2));
                if (iv.width() * Rational(1 << 20) <= mid) return std::fabs(iv.mid_double());
            }
            if (!pt.cfb().s->refine_once()) break;
        }
        throw BudgetExceeded("block_markers: cannot pin a'_j");
    };

    DeepScan scan;
    Int bp(-1), bq(0);
    long long i = 0;           // next deep index
    std::size_t kappa = 0;     // containment block of the current deep point
    Int c_lo(0);               // c'_kappa
    Int c_hi = cf.coefficient(2);  // c'_{kappa+1}
    long long n_prev_end = -1;     // n'_{k-1} (previous block end)
    std::vector<InteriorSample> pending;
    std::vector<MarkerSample> markers;
    bool armed = false;        // inside the final excursion of a block
    Int fe_p0, fe_q0;          // pair at n_{c'_k - 1}
    Convergent fe_end;         // conv(2k) expected at the block end
    Int fe_cap;                // markers live in [0, c_{2k+1}]
    double fe_apm1 = 0;        // a'_{2k-1}

    while (scan.steps < max_steps) {
        const OrbitState& st = cursor.next();
        ++scan.steps;

        if (armed) {
            // (p,q) = x * start + y * conv(2k); the basis is unimodular
            Int det = fe_p0 * fe_end.q - fe_q0 * fe_end.p;
            Int x = st.p * fe_end.q - st.q * fe_end.p;
            Int y = st.q * fe_p0 - st.p * fe_q0;
            if (det < 0) {
                x = -x;
                y = -y;
            }
            if (x == 1 && y > 0 && y <= fe_cap && y.fits_slong_p())
                markers.push_back({y.get_si(), st.n, y.get_d() / (fe_apm1 * fe_apm1)});
        }

        if (cursor.compare(st.p, st.q, bp, bq) >= 0) continue;
        bp = st.p;
        bq = st.q;

        DeepIndex d;
        d.i = static_cast<std::size_t>(i);
        d.n = st.n;
        d.p = st.p;
        d.q = st.q;
        d.value = cursor.value(st.p, st.q);
        d.f_at = st.f;
        bool block_end;
        std::size_t end_k = 0;  // BlockMarkers.k when block_end
        if (i == 0) {
            d.block = 0;
            d.offset = 0;
            block_end = true;
            end_k = 0;
        } else {
            while (Int(static_cast<long>(i)) > c_hi) {
                c_lo = c_hi;
                ++kappa;
                c_hi += cf.coefficient(2 * kappa + 2);
            }
            d.block = kappa;
            d.offset = Int(static_cast<long>(i)) - c_lo;
            block_end = (Int(static_cast<long>(i)) == c_hi);
            end_k = kappa + 1;

            // Lemma 2.7 sample: i in (c'_{k-1}, c'_k] with paper k = kappa+1
            InteriorSample smp;
            smp.i = d.i;
            smp.offset = d.offset;
            smp.n = st.n;
            smp.delta_n = st.n - n_prev_end;
            double a_even = a_prime(2 * kappa);
            double a_odd = a_prime(2 * kappa + 1);
            double sv = d.offset.get_d();
            smp.main_term =
                3.0 / (kPi * kPi) / a_odd * (1.0 / (a_even - sv * a_odd) - 1.0 / a_even);
            pending.push_back(std::move(smp));
        }
        scan.deep.push_back(d);

        if (block_end) {
            armed = false;
            BlockMarkers bm;
            bm.k = end_k;
            bm.c_prime = Int(static_cast<long>(i));
            bm.n_end = st.n;
            bm.f_end = st.f;
            Convergent ek = cf.convergent(2 * end_k);
            Convergent ok = cf.convergent(2 * end_k + 1);
            if (!(ek.p == st.p && ek.q == st.q))
                throw std::logic_error("block_markers: block end pair is not an even convergent");
            bm.predicted_order = ek.q * ok.q;
            bm.log_ratio = (bm.predicted_order > 1 && st.n > 1)
                               ? ln_mpz(Int(static_cast<long>(st.n))) / ln_mpz(bm.predicted_order)
                               : std::numeric_limits<double>::quiet_NaN();
            bm.a_end = a_prime(2 * end_k);
            bm.a_prev_odd =
                end_k >= 1 ? a_prime(2 * end_k - 1) : std::numeric_limits<double>::quiet_NaN();
            bm.interior = std::move(pending);
            pending.clear();
            bm.markers = std::move(markers);
            markers.clear();
            scan.blocks.push_back(std::move(bm));
            n_prev_end = st.n;
            if (scan.blocks.size() > K) break;
        }

        if (collect_markers) {
            // does the NEXT deep point close a block? then the excursion we
            // are entering is that block's final excursion
            Int nxt(static_cast<long>(i + 1));
            Int nxt_c_lo = c_lo, nxt_c_hi = c_hi;
            std::size_t nxt_kappa = kappa;
            while (nxt > nxt_c_hi) {
                nxt_c_lo = nxt_c_hi;
                ++nxt_kappa;
                nxt_c_hi += cf.coefficient(2 * nxt_kappa + 2);
            }
            if (nxt == nxt_c_hi) {
                armed = true;
                fe_p0 = st.p;
                fe_q0 = st.q;
                fe_end = cf.convergent(2 * (nxt_kappa + 1));
                fe_cap = cf.coefficient(2 * nxt_kappa + 3);
                fe_apm1 = a_prime(2 * nxt_kappa + 1);
                markers.push_back({0, st.n, 0.0});
            }
        }
        ++i;
    }
    return scan;
}

}  // namespace bcz
