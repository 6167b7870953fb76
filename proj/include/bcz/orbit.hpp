#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "bcz/point.hpp"
#include "bcz/sieve.hpp"

namespace bcz {

enum class Direction { Forward, Backward };

// One step of a BCZ orbit. Along the whole bi-infinite orbit the x-coordinates
// satisfy a_{n+1} = k_n a_n - a_{n-1}; the same recurrence drives the integer
// pairs, a_n = q_n b0 - p_n a0 with seeds (p_0,q_0) = (-1,0), (p_1,q_1) = (0,1).
// Consecutive pairs stay unimodular: q_{n+1} p_n - q_n p_{n+1} = +-1.
struct OrbitState {
    long long n = 0;  // forward: n >= 1; backward: n = -r
    Int k;            // k_n = k(T^{n-1} pt)
    Int f;            // forward: f_n = sum_{i=1..n} (k_i - 3)
                      // backward: f_{-r} = sum_{i=0..r} (k_{-i} - 3), k_0 included
    Int p, q;         // pair of a_n
    Int p_up, q_up;   // pair of a_{n+1}
};

// Sequential orbit driver over either backend. Irrational orbits advance the
// integer-pair recurrence; the only certified operation per step is one floor.
class OrbitCursor {
  public:
    OrbitCursor(FareyTrianglePoint seed, Direction dir, unsigned max_bits = kDefaultMaxBits);

    const OrbitState& next();  // FloorAmbiguous / StreamExhausted propagate
    const OrbitState& state() const { return st_; }
    Direction direction() const { return dir_; }
    bool is_rational() const { return seed_.is_rational(); }
    const FareyTrianglePoint& seed() const { return seed_; }

    // k_0 = k(T^{-1} pt) = k(b,a)
    const Int& k0() const { return k0_; }

    // Certified interval (exact point for the rational backend) of the
    // x-coordinate with pair (p,q).
    Interval value(const Int& p, const Int& q) const;

    // Certified order of two x-coordinates given by pairs; values of distinct
    // pairs on an irrational orbit can never coincide.
    int compare(const Int& p1, const Int& q1, const Int& p2, const Int& q2) const;

    // Cross-check mode (cf backend): additionally iterates the point by direct
    // interval images of T and verifies overlap with the pair-form interval at
    // every step. Interval widths grow with each image, so this is a test
    // device for short prefixes, not a production mode.
    void enable_crosscheck();

  private:
    FareyTrianglePoint seed_;
    Direction dir_;
    unsigned max_bits_;
    OrbitState st_;
    Int pj_, qj_, pj1_, qj1_;  // backward bookkeeping: pairs of (a_j, a_{j+1})
    Int kj_;
    Int k0_;
    bool crosscheck_ = false;
    std::optional<Interval> ca_, cb_;

    Int floor_step(const Int& p_num, const Int& q_num, const Int& p_den, const Int& q_den) const;
};

// Stream states n = 1..N (forward) or r = 1..N (backward) into the callback;
// stop early if it returns false.
void orbit_iter(const FareyTrianglePoint& pt, long long N, Direction dir,
                const std::function<bool(const OrbitState&)>& cb,
                unsigned max_bits = kDefaultMaxBits);

// fhat_n = sum_{i=1..n} (khat(T^{i-1} pt) - 3) tracked exactly as 2*fhat.
// Satisfies fhat_n = f_{n-1} + k_n/2 + k_0/2 - 3 at every step.
struct FhatTracker {
    Int twice;  // 2 * fhat_n
    Int prev_k;
    Int k0;

    explicit FhatTracker(const Int& k_0) : twice(0), prev_k(k_0), k0(k_0) {}
    void push(const Int& k_n) {
        twice += prev_k + k_n - 6;
        prev_k = k_n;
    }
    Rational value() const { return Rational(twice, 2); }
};

std::vector<Rational> fhat_series(const FareyTrianglePoint& pt, long long N,
                                  unsigned max_bits = kDefaultMaxBits);

// Exact orbit of (1/n, 1): period A_n = sum_{m<=n} phi(m), itinerary sum
// 3 A_n - 1, and the x-coordinates traverse the Farey denominators of order n.
struct PeriodicOrbitReport {
    unsigned long order = 0;
    unsigned long long period = 0;
    std::vector<long long> itinerary;  // kept when keep_itinerary
    unsigned long long itinerary_sum = 0;
    bool hall_shiu_ok = false;     // sum == 3 A_n - 1
    bool period_ok = false;        // period == sum phi
    bool farey_match_ok = false;   // a-sequence == Farey denominators / n
};

PeriodicOrbitReport periodic_orbit(unsigned long order, bool keep_itinerary = true,
                                   bool check_farey = true);

// For a rational point: n = floor(q/a) with b/a = p/q in lowest terms, and the
// orbit returns to the start in exactly A_n steps.
struct RationalPeriod {
    unsigned long n = 0;
    unsigned long long period = 0;  // A_n
    bool verified = false;          // direct iteration returned in exactly A_n steps
};

RationalPeriod period_of_rational(const FareyTrianglePoint& pt, bool verify = true);

}  // namespace bcz
