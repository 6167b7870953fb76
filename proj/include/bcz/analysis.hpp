#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "bcz/excursion.hpp"
#include "bcz/orbit.hpp"
#include "bcz/point.hpp"

namespace bcz {

// Positive sequence carried as exact rationals, or as integer pairs over a
// point's backend (value_i = q_i b - p_i a). On orbit slices the interior
// ratios (s_{i-1}+s_{i+1})/s_i are the itinerary integers.
struct PairSeq {
    std::vector<std::pair<Int, Int>> terms;
    FareyTrianglePoint seed;
    unsigned max_bits = kDefaultMaxBits;

    explicit PairSeq(FareyTrianglePoint seed_pt) : seed(std::move(seed_pt)) {}
};

// h(s_1..s_n) = sum_{i=2}^{n-1} ((s_{i-1}+s_{i+1})/s_i - 3); length >= 3.
Rational h_value(const std::vector<Rational>& seq);
// Pair route: every interior ratio must be an exact integer (orbit slices);
// throws PreconditionFailed(Divisibility) otherwise.
Int h_value(const PairSeq& seq);

// Remove a largest term s_r (smallest eligible r in [3, n-2], 1-indexed)
// when length >= 5 and s_i | s_{i-1}+s_{i+1} holds for interior i; h is
// unchanged. A maximal term qualifies only when (s_{r-1}+s_{r+1})/s_r = 1,
// which is automatic unless both neighbours tie the maximum (the elimination
// would change h there). PreconditionFailed carries the reason.
std::vector<Rational> eliminate_max(const std::vector<Rational>& seq);
PairSeq eliminate_max(const PairSeq& seq);

// Apply eliminate_max to a fixpoint; h preserved at every stage.
std::vector<Rational> reduce_fully(std::vector<Rational> seq);
PairSeq reduce_fully(PairSeq seq);

// Theorem 3.2 on an excursion slice (a_i)_{i=0}^m, m = t - s >= 4: with
// slice-relative sums f_i, the strict chain f_1 > f_i > f_{m-1} holds for all
// i in [2, m-2]. Validates the depth condition first (NotAnExcursion).
bool check_monotonicity(const std::vector<Rational>& slice);
bool check_monotonicity(const PairSeq& slice);

// Forward:  max{(e^- - 1)/e^-, (e^+ - 2)/e^+}
// Backward: max{(e^+ - 1)/e^+, (e^- - 2)/e^-}
double theoretical_limsup(double e_plus, double e_minus, Direction dir);
Rational theoretical_limsup(const Rational& e_plus, const Rational& e_minus, Direction dir);

struct LogLawProbe {
    long long n;
    Int f;
    double ratio;  // log|f_n| / log n
    bool deep;
    bool block_end;
};

struct BlockendRatio {
    std::size_t k;
    long long n;
    Int f;
    double ratio;
};

struct LogLawSummary {
    long long steps = 0;
    Direction dir = Direction::Forward;
    long long tail_from = 0;
    double tail_max_ratio = std::numeric_limits<double>::quiet_NaN();
    long long tail_argmax = 0;
    std::vector<BlockendRatio> blockends;
};

// Streams probes (n, f_n, log|f_n|/log n) for n <= N with f_n != 0, marking
// deep points and block ends, and keeps the running maximum over the tail
// window [tail_from, N] (default sqrt(N)). Forward block ends are the even
// convergent pairs, backward ones the negated odd convergent pairs.
LogLawSummary loglaw_probe(const FareyTrianglePoint& pt, long long N, Direction dir,
                           long long tail_from = 0,
                           const std::function<void(const LogLawProbe&)>& sink = nullptr,
                           unsigned max_bits = kDefaultMaxBits);

struct BlockendBoundRow {
    std::size_t k;
    long long n;
    Int f;
    Int sum_diff;          // S_k = sum_{j=0}^{k} (c_{2j+1} - c_{2j})
    bool bound_ok;         // S + 1/a - 4 < f < S + 1/a - 2, certified
    bool f_a_in_09_11;     // 9/10 < f * a < 11/10, certified
    double f_times_a;
    double log_ratio;      // log n'_k / log(q'_{2k} q'_{2k+1})
    double remark33_ratio;  // S_k * a'_{2k}
};

struct InteriorBoundRow {
    std::size_t block_k;   // paper block index (ends at c'_k)
    std::size_t i;
    Int i_prime;
    long long n;
    Int f;
    bool r34_ok;           // 0.9/a - i' < f < 1.1/a - i', certified
    double inv_a;
};

struct AsymptoticsReport {
    std::vector<BlockendBoundRow> blockends;
    std::vector<InteriorBoundRow> interiors;  // only from blocks with c_{2k} >= 2
    bool interior_probe_present = false;
    std::size_t onset_k = 2;
};

// Exact two-sided block-end bound, interior r3/r4 bounds past the onset
// block, and the vanishing Remark 3.3 ratio.
AsymptoticsReport subsequence_asymptotics_check(const FareyTrianglePoint& pt, std::size_t K,
                                                long long max_steps, std::size_t onset_k = 2);

}  // namespace bcz
