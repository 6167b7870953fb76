#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bcz/rational.hpp"

namespace bcz {

// p'_k / q'_k with seeds (p'_{-1}, q'_{-1}) = (1, 0), (p'_{-2}, q'_{-2}) = (0, 1).
struct Convergent {
    std::size_t k = 0;
    Int p, q;

    Rational value() const { return Rational(p, q); }
};

// Coefficient stream c_0, c_1, ... of a continued fraction [c0; c1, c2, ...].
// c_n >= 1 for n >= 1; c_0 >= 0. Deterministic: repeated reads of c_n return
// the same value. Coefficients and convergents are cached; reads are
// internally synchronized so a source may be shared across threads.
class ContinuedFraction {
  public:
    // rule(k, prefix) -> c_k; prefix holds convergents 0..k-1 of the emitted coefficients.
    using Rule = std::function<Int(std::size_t, const std::vector<Convergent>&)>;

    static std::shared_ptr<ContinuedFraction> finite(std::vector<Int> coeffs);
    static std::shared_ptr<ContinuedFraction> periodic(std::vector<Int> head, std::vector<Int> cycle);
    static std::shared_ptr<ContinuedFraction> programmatic(Rule rule, std::string label = "programmatic");

    // Notation "[c0;c1,c2,...]". A trailing ",..." repeats the last listed
    // coefficient forever; without it the CF is finite.
    static std::shared_ptr<ContinuedFraction> parse(std::string_view text);

    // Length if the stream is finite.
    std::optional<std::size_t> finite_length() const;

    Int coefficient(std::size_t k) const;        // StreamExhausted past a finite end
    Convergent convergent(std::size_t k) const;  // cached recurrence

    std::string str(std::size_t max_terms = 8) const;
    const std::string& label() const { return label_; }

  private:
    ContinuedFraction() = default;
    void materialize(std::size_t k) const;  // callers hold mu_

    std::optional<std::size_t> finite_len_;
    Rule rule_;
    std::string label_;
    mutable std::vector<Int> coeffs_;
    mutable std::vector<Convergent> convs_;
    mutable std::mutex mu_;
};

using CfPtr = std::shared_ptr<ContinuedFraction>;

// Convergents 0..K. Throws StreamExhausted if the source is shorter.
std::vector<Convergent> convergents(const ContinuedFraction& cf, std::size_t K);

// Euclidean expansion of x > 0, canonical form (last coefficient >= 2 unless
// the expansion is a single term).
CfPtr cf_of_rational(const Rational& x);

Rational value_of_finite(const ContinuedFraction& cf);

// e_n = 2 + ln c_n / ln q'_{n-1}, defined for n in 2..K with q'_{n-1} >= 2.
// Indices where q'_{n-1} = 1 carry no information and are omitted.
struct ExponentSample {
    std::size_t n;
    double e_n;
};
std::vector<ExponentSample> exponent_sequence(const ContinuedFraction& cf, std::size_t K);

// Finite-horizon limsup probe: parity-wise max of e_n over n in [tail_start, K].
// An estimate, not the true limsup. Parities with no defined sample report 2.
struct ExponentEstimate {
    std::vector<ExponentSample> series;
    double e_plus = 2.0;
    double e_minus = 2.0;
    std::size_t tail_start = 0;
    std::size_t horizon = 0;
};
ExponentEstimate estimate_exponents(const ContinuedFraction& cf, std::size_t K,
                                    std::size_t tail_start);

// Slope with prescribed even/odd Diophantine exponents:
//   c_0 = 1,
//   c_{2n}   = max(1, round(q'_{2n-1}^(e_plus - 2))),
//   c_{2n+1} = max(1, round(q'_{2n}^(e_minus - 2))),
// each q' computed from the already-emitted prefix; ties round half up.
// Targets are exact rationals >= 2 (infinite targets are not supported).
CfPtr construct_cf(const Rational& target_e_plus, const Rational& target_e_minus);

// round(base^x) for base >= 1 and rational x >= 0, exact integer arithmetic
// (kth roots + cross-multiplied half comparisons), ties half up.
Int round_pow(const Int& base, const Rational& x);

}  // namespace bcz
