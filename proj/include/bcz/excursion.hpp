#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "bcz/orbit.hpp"
#include "bcz/point.hpp"
#include "bcz/sieve.hpp"

namespace bcz {

// Excursion endpoints (window indices, s < t): every strictly interior value
// exceeds both endpoint values. Endpoint equality with each other is allowed
// (the full Farey period is an excursion); interior strictness is required.
struct Excursion {
    std::size_t s = 0, t = 0;

    std::size_t length() const { return t - s; }
    friend bool operator==(const Excursion&, const Excursion&) = default;
};

enum class ExcursionMode { All, BetweenRecords };

// Window of orbit x-values with certified pairwise comparisons. Either exact
// rationals, or integer pairs over a seed (rational seed exact, cf seed via
// certified signs of (dq) s - (dp)).
class ValueWindow {
  public:
    explicit ValueWindow(std::vector<Rational> values);
    ValueWindow(std::vector<std::pair<Int, Int>> pairs, FareyTrianglePoint seed,
                unsigned max_bits = kDefaultMaxBits);

    std::size_t size() const;
    // -1, 0, +1 ordering of values at i, j; ComparisonAmbiguous on budget
    int compare(std::size_t i, std::size_t j) const;
    Interval value(std::size_t i) const;
    // independent refinement state for a worker thread
    ValueWindow thread_clone() const;

  private:
    std::vector<Rational> vals_;
    std::vector<std::pair<Int, Int>> pairs_;
    std::shared_ptr<FareyTrianglePoint> seed_;
    unsigned max_bits_ = kDefaultMaxBits;
};

// mode=All: every index pair satisfying the depth condition, O(W^2) scans
// parallelized over the left endpoint. mode=BetweenRecords: the chain linking
// successive new-minimum indices. Results sorted by (s, t).
std::vector<Excursion> detect_excursions(const ValueWindow& window, ExcursionMode mode);
std::vector<Excursion> detect_excursions(const std::vector<Rational>& window, ExcursionMode mode);

// Serial reference implementation; must produce identical results.
std::vector<Excursion> detect_excursions_serial(const ValueWindow& window, ExcursionMode mode);

// |{(u,v) coprime, u,v >= 1, u a + v b <= 1}|, exact. Equals the excursion
// length minus one when a, b are the endpoint values (Eq. 2.2 route).
unsigned long long coprime_pair_count(const Rational& a, const Rational& b);
unsigned long long coprime_pair_count_serial(const Rational& a, const Rational& b);

// Mobius-inversion route: sum_d mu(d) * |{u a + v b <= 1/d}|; must equal the
// direct count exactly.
unsigned long long coprime_pair_count_mobius(const Rational& a, const Rational& b);

// Coprime count for excursion endpoints given as orbit pairs over a cf-backed
// point; every range bound is one certified floor.
unsigned long long coprime_pair_count_certified(const FareyTrianglePoint& pt,
                                                const std::pair<Int, Int>& end_s,
                                                const std::pair<Int, Int>& end_t,
                                                unsigned max_bits = kDefaultMaxBits);

// Lemma 2.4 main term and error scale, as diagnostics.
struct LengthEstimate {
    double main_term;    // (3/pi^2) / (a b)
    double error_scale;  // max(1/a, 1/b) * log(min(1/a, 1/b))
};
LengthEstimate excursion_length_estimate(double a, double b);
LengthEstimate excursion_length_estimate(const Rational& a, const Rational& b);

// One element of the deepest-point subsequence: a_{n_i} < a_j for all j < n_i.
// Lemma 2.6 block decomposition: pair = m * conv(2k+1) + conv(2k) with
// m = i - (c_2 + ... + c_{2k}) inside block k (m = i in block 0).
struct DeepIndex {
    std::size_t i = 0;
    long long n = -1;  // orbit index; -1 when produced by the formula route
    Int p, q;
    std::size_t block = 0;
    Int offset;
    Interval value;
    Int f_at;  // itinerary partial sum at n (orbit-scan routes only)
};

// Records found by scanning the forward orbit through N steps.
std::vector<DeepIndex> deepest_subsequence_bruteforce(OrbitCursor& cursor, long long N);

// Records predicted by the Lemma 2.6 formula (first I of them); no orbit
// indices. Must match the brute force pairwise wherever both exist.
std::vector<DeepIndex> deepest_subsequence_formula(const FareyTrianglePoint& pt, std::size_t I);

// Per-block bookkeeping from a measured orbit scan.
struct InteriorSample {
    std::size_t i;       // global deep index
    Int offset;          // s = i - c'_{k-1}
    long long n;         // measured n_i
    long long delta_n;   // measured n_i - n'_{k-1}
    double main_term;    // Lemma 2.7 prediction for the delta
};
struct MarkerSample {
    long long i;  // (s,t) = (1,i)
    long long n;  // measured m_i
    double growth_ref;  // i / a'^2_{2k-1}
};
struct BlockMarkers {
    std::size_t k = 0;
    Int c_prime;             // c'_k = c_2 + ... + c_{2k}
    long long n_end = -1;    // measured n'_k
    Int f_end;               // f at n'_k
    Int predicted_order;     // q'_{2k} q'_{2k+1}  (Eq. 3.3)
    double log_ratio = 0;    // log n'_k / log predicted
    double a_prev_odd = 0;   // a'_{2k-1}
    double a_end = 0;        // a'_{2k} = a_{n'_k}
    std::vector<InteriorSample> interior;
    std::vector<MarkerSample> markers;
};

struct DeepScan {
    std::vector<DeepIndex> deep;
    std::vector<BlockMarkers> blocks;
    long long steps = 0;
};

// Scan the forward orbit up to max_steps or K complete blocks, collecting
// deep points, block ends, Lemma 2.7 interior samples and the (1,i) markers
// of each block's final excursion.
DeepScan block_markers(const FareyTrianglePoint& pt, std::size_t K, long long max_steps,
                       bool collect_markers = true);

}  // namespace bcz
