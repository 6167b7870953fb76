#include "bcz/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bcz/errors.hpp"

namespace bcz {

namespace {

void require_positive(const std::vector<Rational>& seq) {
    for (const Rational& s : seq)
        if (s.sign() <= 0) throw std::invalid_argument("sequence terms must be positive");
}

// interior ratio (s_{i-1}+s_{i+1})/s_i for a rational sequence
Rational rat_ratio(const std::vector<Rational>& seq, std::size_t i) {
    return (seq[i - 1] + seq[i + 1]) / seq[i];
}

// interior ratio for a pair sequence; exact integer required.
// cf backend: (p,q) sums must be an integer multiple of (p_i, q_i);
// rational backend: exact value division.
Int pair_ratio(const PairSeq& seq, std::size_t i) {
    const auto& [pm, qm] = seq.terms[i - 1];
    const auto& [pi, qi] = seq.terms[i];
    const auto& [pp, qp] = seq.terms[i + 1];
    if (seq.seed.is_rational()) {
        const auto& r = seq.seed.rat();
        Rational vi = Rational(qi) * r.b - Rational(pi) * r.a;
        Rational vs = Rational(qm + qp) * r.b - Rational(pm + pp) * r.a;
        Rational t = vs / vi;
        if (!t.is_integer() || t.sign() <= 0)
            throw PreconditionFailed(PreconditionFailed::Reason::Divisibility,
                                     "interior term does not divide its neighbour sum");
        return t.num();
    }
    Int sp = pm + pp, sq = qm + qp;
    // (sp, sq) = t (pi, qi)
    const Int& base = (qi != 0) ? qi : pi;
    const Int& snum = (qi != 0) ? sq : sp;
    Int t, r;
    mpz_tdiv_qr(t.get_mpz_t(), r.get_mpz_t(), snum.get_mpz_t(), base.get_mpz_t());
    if (r != 0 || t <= 0 || sp != t * pi || sq != t * qi)
        throw PreconditionFailed(PreconditionFailed::Reason::Divisibility,
                                 "pair sum is not an integer multiple of the interior pair");
    return t;
}

int pair_compare(const PairSeq& seq, std::size_t i, std::size_t j) {
    const auto& [pi, qi] = seq.terms[i];
    const auto& [pj, qj] = seq.terms[j];
    if (seq.seed.is_rational()) {
        const auto& r = seq.seed.rat();
        return (Rational(qi - qj) * r.b - Rational(pi - pj) * r.a).sign();
    }
    return certified_sign(LinearForm(Rational(pj - pi), Rational(qi - qj)), *seq.seed.cfb().s,
                          seq.max_bits);
}

}  // namespace

Rational h_value(const std::vector<Rational>& seq) {
    if (seq.size() < 3) throw std::invalid_argument("h: length >= 3 required");
    require_positive(seq);
    Rational acc;
    for (std::size_t i = 1; i + 1 < seq.size(); ++i) acc += rat_ratio(seq, i) - Rational(3);
    return acc;
}

Int h_value(const PairSeq& seq) {
    if (seq.terms.size() < 3) throw std::invalid_argument("h: length >= 3 required");
    Int acc(0);
    for (std::size_t i = 1; i + 1 < seq.terms.size(); ++i) acc += pair_ratio(seq, i) - 3;
    return acc;
}

namespace {

// shared eliminate_max skeleton: callbacks give length, divisibility check
// (returning the interior ratio), and comparison; returns the index to remove
// (0-based). A maximum whose neighbours both tie it has ratio 2 and removing
// it would change h, so such positions never qualify.
template <typename DivCheck, typename Cmp>
std::size_t eliminate_index(std::size_t n, DivCheck&& ratio_at, Cmp&& cmp) {
    if (n < 5)
        throw PreconditionFailed(PreconditionFailed::Reason::Length, "length >= 5 required");
    std::vector<Int> ratios(n, Int(0));
    for (std::size_t i = 1; i + 1 < n; ++i) ratios[i] = ratio_at(i);  // throws on failure
    std::size_t max_idx = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (cmp(i, max_idx) > 0) max_idx = i;
    // smallest eligible r in [3, n-2] (1-indexed) holding the maximum value
    for (std::size_t r = 2; r + 2 < n; ++r)
        if (cmp(r, max_idx) == 0 && ratios[r] == 1) return r;
    throw PreconditionFailed(PreconditionFailed::Reason::MaxPosition,
                             "no maximal term at an interior-eligible position");
}

}  // namespace

std::vector<Rational> eliminate_max(const std::vector<Rational>& seq) {
    require_positive(seq);
    std::size_t r = eliminate_index(
        seq.size(),
        [&seq](std::size_t i) {
            Rational t = rat_ratio(seq, i);
            if (!t.is_integer() || t.sign() <= 0)
                throw PreconditionFailed(PreconditionFailed::Reason::Divisibility,
                                         "interior term does not divide its neighbour sum");
            return t.num();
        },
        [&seq](std::size_t i, std::size_t j) {
            if (seq[i] < seq[j]) return -1;
            return seq[i] == seq[j] ? 0 : 1;
        });
    std::vector<Rational> out = seq;
    out.erase(out.begin() + static_cast<std::ptrdiff_t>(r));
    return out;
}

PairSeq eliminate_max(const PairSeq& seq) {
    std::size_t r = eliminate_index(
        seq.terms.size(), [&seq](std::size_t i) { return pair_ratio(seq, i); },
        [&seq](std::size_t i, std::size_t j) { return pair_compare(seq, i, j); });
    PairSeq out = seq;
    out.terms.erase(out.terms.begin() + static_cast<std::ptrdiff_t>(r));
    return out;
}

namespace {

// One reduction step: the smallest eligible r (1-indexed in [3, n-2]) whose
// neighbour-sum ratio is exactly 1. Such a term exceeds both neighbours, so
// it is the largest term of the interval it interrupts, and removing it
// drops the two adjacent ratios by exactly one: h is unchanged. This is the
// elimination schedule that collapses an orbit prefix onto its deep values.
template <typename Ratio>
std::optional<std::size_t> reduce_step(std::size_t n, Ratio&& ratio_at) {
    if (n < 5) return std::nullopt;
    for (std::size_t i = 1; i + 1 < n; ++i) ratio_at(i);  // divisibility throughout
    for (std::size_t r = 2; r + 2 < n; ++r)
        if (ratio_at(r) == 1) return r;
    return std::nullopt;
}

}  // namespace

std::vector<Rational> reduce_fully(std::vector<Rational> seq) {
    require_positive(seq);
    while (true) {
        std::optional<std::size_t> r;
        try {
            r = reduce_step(seq.size(), [&seq](std::size_t i) {
                Rational t = rat_ratio(seq, i);
                if (!t.is_integer() || t.sign() <= 0)
                    throw PreconditionFailed(PreconditionFailed::Reason::Divisibility,
                                             "interior term does not divide its neighbour sum");
                return t.num();
            });
        } catch (const PreconditionFailed&) {
            return seq;
        }
        if (!r) return seq;
        seq.erase(seq.begin() + static_cast<std::ptrdiff_t>(*r));
    }
}

PairSeq reduce_fully(PairSeq seq) {
    while (true) {
        std::optional<std::size_t> r;
        try {
            r = reduce_step(seq.terms.size(),
                            [&seq](std::size_t i) { return pair_ratio(seq, i); });
        } catch (const PreconditionFailed&) {
            return seq;
        }
        if (!r) return seq;
        seq.terms.erase(seq.terms.begin() + static_cast<std::ptrdiff_t>(*r));
    }
}

namespace {

// shared Theorem 3.2 checker. On a slice (a_i)_{i=0}^m the slice-relative
// sums F_j = sum_{l<=j} (k_l - 3) compare against the excursion's first point
// (F_0 = 0): strictly negative and strictly above F_{m-1} for j in [1, m-2].
template <typename Value, typename Ratio, typename Cmp>
bool monotonicity_impl(std::size_t len, Ratio&& ratio, Cmp&& cmp) {
    if (len < 5)
        throw PreconditionFailed(PreconditionFailed::Reason::Length,
                                 "excursion slice needs m >= 4");
    std::size_t m = len - 1;
    for (std::size_t j = 1; j < m; ++j)
        if (!(cmp(j, 0) > 0 && cmp(j, m) > 0))
            throw NotAnExcursion("interior value does not exceed both endpoints");
    std::vector<Value> f;
    f.reserve(m);
    Value acc{};
    for (std::size_t j = 1; j < m; ++j) {
        acc += ratio(j) - Value(3);
        f.push_back(acc);  // F_j
    }
    const Value zero{};
    const Value& flast = f.back();  // F_{m-1}
    for (std::size_t j = 1; j + 1 < m; ++j) {
        const Value& fj = f[j - 1];
        if (!(zero > fj && fj > flast)) return false;
    }
    return true;
}

}  // namespace

bool check_monotonicity(const std::vector<Rational>& slice) {
    require_positive(slice);
    return monotonicity_impl<Rational>(
        slice.size(), [&slice](std::size_t j) { return rat_ratio(slice, j); },
        [&slice](std::size_t i, std::size_t j) {
            if (slice[i] < slice[j]) return -1;
            return slice[i] == slice[j] ? 0 : 1;
        });
}

bool check_monotonicity(const PairSeq& slice) {
    return monotonicity_impl<Int>(
        slice.terms.size(), [&slice](std::size_t j) { return pair_ratio(slice, j); },
        [&slice](std::size_t i, std::size_t j) { return pair_compare(slice, i, j); });
}

double theoretical_limsup(double e_plus, double e_minus, Direction dir) {
    if (e_plus < 2.0 || e_minus < 2.0)
        throw std::invalid_argument("theoretical_limsup: exponents >= 2 required");
    if (dir == Direction::Forward)
        return std::max((e_minus - 1.0) / e_minus, (e_plus - 2.0) / e_plus);
    return std::max((e_plus - 1.0) / e_plus, (e_minus - 2.0) / e_minus);
}

Rational theoretical_limsup(const Rational& e_plus, const Rational& e_minus, Direction dir) {
    if (e_plus < Rational(2) || e_minus < Rational(2))
        throw std::invalid_argument("theoretical_limsup: exponents >= 2 required");
    Rational one(1), two(2);
    Rational x = (dir == Direction::Forward) ? (e_minus - one) / e_minus
                                             : (e_plus - one) / e_plus;
    Rational y = (dir == Direction::Forward) ? (e_plus - two) / e_plus
                                             : (e_minus - two) / e_minus;
    return std::max(x, y);
}

LogLawSummary loglaw_probe(const FareyTrianglePoint& pt, long long N, Direction dir,
                           long long tail_from,
                           const std::function<void(const LogLawProbe&)>& sink,
                           unsigned max_bits) {
    LogLawSummary out;
    out.steps = N;
    out.dir = dir;
    out.tail_from = tail_from > 0
                        ? tail_from
                        : static_cast<long long>(std::floor(std::sqrt(static_cast<double>(N))));
    if (out.tail_from < 2) out.tail_from = 2;

    OrbitCursor cursor(pt, dir, max_bits);
    const bool cf = !pt.is_rational();
    std::size_t next_conv = (dir == Direction::Forward) ? 0 : 1;  // even / odd convergents
    Int bp(-1), bq(0);
    double best = std::numeric_limits<double>::quiet_NaN();
    long long best_at = 0;

    for (long long step = 1; step <= N; ++step) {
        const OrbitState& st = cursor.next();
        bool deep = cursor.compare(st.p, st.q, bp, bq) < 0;
        bool block_end = false;
        std::size_t bk = 0;
        if (deep) {
            bp = st.p;
            bq = st.q;
            if (cf) {
                Convergent c = pt.cfb().cf->convergent(next_conv);
                bool match = (dir == Direction::Forward) ? (st.p == c.p && st.q == c.q)
                                                         : (st.p == -c.p && st.q == -c.q);
                if (match) {
                    block_end = true;
                    bk = (dir == Direction::Forward) ? next_conv / 2 : (next_conv + 1) / 2;
                    next_conv += 2;
                }
            }
        }
        bool has_ratio = (st.f != 0 && step >= 2);
        double ratio = has_ratio
                           ? ln_mpz(Int(::abs(st.f))) / std::log(static_cast<double>(step))
                           : std::numeric_limits<double>::quiet_NaN();
        if (block_end) out.blockends.push_back({bk, st.n, st.f, ratio});
        if (!has_ratio) continue;
        if (sink) sink(LogLawProbe{st.n, st.f, ratio, deep, block_end});
        if (step >= out.tail_from && (std::isnan(best) || ratio > best)) {
            best = ratio;
            best_at = st.n;
        }
    }
    out.tail_max_ratio = best;
    out.tail_argmax = best_at;
    return out;
}

AsymptoticsReport subsequence_asymptotics_check(const FareyTrianglePoint& pt, std::size_t K,
                                                long long max_steps, std::size_t onset_k) {
    if (pt.is_rational())
        throw std::invalid_argument("subsequence_asymptotics_check: cf backend required");
    AsymptoticsReport rep;
    rep.onset_k = onset_k;
    DeepScan scan = block_markers(pt, K, max_steps, /*collect_markers=*/false);
    const auto& cf = *pt.cfb().cf;
    auto& s = *pt.cfb().s;

    // 1/a > M  <=>  (1 - M q) s + M p > 0   for a = (q s - p)/s > 0
    auto inv_a_gt = [&s](const Int& p, const Int& q, const Rational& m) {
        return certified_sign(LinearForm(m * Rational(p), Rational(1) - m * Rational(q)), s) > 0;
    };

    for (const BlockMarkers& bm : scan.blocks) {
        std::size_t k = bm.k;
        Convergent ek = cf.convergent(2 * k);
        Int S(0);
        for (std::size_t j = 0; j <= k; ++j)
            S += cf.coefficient(2 * j + 1) - cf.coefficient(2 * j);
        BlockendBoundRow row;
        row.k = k;
        row.n = bm.n_end;
        row.f = bm.f_end;
        row.sum_diff = S;
        // S + 1/a - 4 < f < S + 1/a - 2  <=>  f - S + 2 < 1/a < f - S + 4
        row.bound_ok = inv_a_gt(ek.p, ek.q, Rational(bm.f_end - S + 2)) &&
                       !inv_a_gt(ek.p, ek.q, Rational(bm.f_end - S + 4));
        // 9/10 < f a < 11/10  <=>  (10/9) > 1/(f a) ... certified on 1/a
        row.f_a_in_09_11 =
            bm.f_end > 0 &&
            inv_a_gt(ek.p, ek.q, Rational(bm.f_end) * Rational(Int(10), Int(11))) &&
            !inv_a_gt(ek.p, ek.q, Rational(bm.f_end) * Rational(Int(10), Int(9)));
        row.f_times_a = bm.f_end.get_d() * bm.a_end;
        row.log_ratio = bm.log_ratio;
        row.remark33_ratio = S.get_d() * bm.a_end;
        rep.blockends.push_back(row);
    }

    for (const DeepIndex& d : scan.deep) {
        // strict interior of paper block k = d.block + 1
        std::size_t pk = d.block + 1;
        if (d.i == 0 || d.offset >= cf.coefficient(2 * pk)) continue;
        rep.interior_probe_present = true;
        if (pk < onset_k) continue;
        Convergent even = cf.convergent(2 * d.block);
        Convergent odd = cf.convergent(2 * d.block + 1);
        Int pp = d.offset * odd.p + even.p;  // == d.p
        Int qq = d.offset * odd.q + even.q;
        InteriorBoundRow row;
        row.block_k = pk;
        row.i = d.i;
        row.i_prime = d.offset;
        row.n = d.n;
        row.f = d.f_at;
        Rational fi = Rational(d.f_at) + Rational(d.offset);
        // 0.9/a - i' < f < 1.1/a - i'  <=>  (10/11)(f+i') < 1/a < (10/9)(f+i')
        row.r34_ok = inv_a_gt(pp, qq, fi * Rational(Int(10), Int(11))) &&
                     !inv_a_gt(pp, qq, fi * Rational(Int(10), Int(9)));
        row.inv_a = 1.0 / d.value.mid_double();
        rep.interiors.push_back(row);
    }
    return rep;
}

}  // namespace bcz
