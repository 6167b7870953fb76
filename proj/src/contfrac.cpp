#include "bcz/contfrac.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "bcz/errors.hpp"

namespace bcz {

namespace {

void check_coefficient(std::size_t k, const Int& c) {
    if (k == 0) {
        if (c < 0) throw std::invalid_argument("continued fraction: c_0 must be >= 0");
    } else if (c < 1) {
        throw std::invalid_argument("continued fraction: c_n >= 1 required for n >= 1");
    }
}

}  // namespace

std::shared_ptr<ContinuedFraction> ContinuedFraction::finite(std::vector<Int> coeffs) {
    if (coeffs.empty()) throw std::invalid_argument("continued fraction: empty coefficient list");
    auto cf = std::shared_ptr<ContinuedFraction>(new ContinuedFraction());
    for (std::size_t k = 0; k < coeffs.size(); ++k) check_coefficient(k, coeffs[k]);
    cf->finite_len_ = coeffs.size();
    cf->coeffs_ = std::move(coeffs);
    cf->label_ = "finite";
    return cf;
}

std::shared_ptr<ContinuedFraction> ContinuedFraction::periodic(std::vector<Int> head,
                                                               std::vector<Int> cycle) {
    if (cycle.empty()) throw std::invalid_argument("continued fraction: empty cycle");
    for (const Int& c : cycle)
        if (c < 1) throw std::invalid_argument("continued fraction: cycle coefficients >= 1");
    auto cf = std::shared_ptr<ContinuedFraction>(new ContinuedFraction());
    for (std::size_t k = 0; k < head.size(); ++k) check_coefficient(k, head[k]);
    if (head.empty() && cycle.front() < 1)
        throw std::invalid_argument("continued fraction: c_0 must be >= 0");
    cf->rule_ = [head, cycle](std::size_t k, const std::vector<Convergent>&) -> Int {
        if (k < head.size()) return head[k];
        return cycle[(k - head.size()) % cycle.size()];
    };
    cf->label_ = "periodic";
    return cf;
}

std::shared_ptr<ContinuedFraction> ContinuedFraction::programmatic(Rule rule, std::string label) {
    if (!rule) throw std::invalid_argument("continued fraction: null rule");
    auto cf = std::shared_ptr<ContinuedFraction>(new ContinuedFraction());
    cf->rule_ = std::move(rule);
    cf->label_ = std::move(label);
    return cf;
}

void ContinuedFraction::materialize(std::size_t k) const {
    if (finite_len_ && k >= *finite_len_)
        throw StreamExhausted(label_ + ": coefficient index " + std::to_string(k) +
                              " past finite length " + std::to_string(*finite_len_));
    while (coeffs_.size() <= k) {
        std::size_t j = coeffs_.size();
        // keep convergents in lockstep so rules can see the prefix
        while (convs_.size() < j) {
            std::size_t i = convs_.size();
            const Int& c = coeffs_[i];
            Convergent cv;
            cv.k = i;
            if (i == 0) {
                cv.p = c;
                cv.q = 1;
            } else if (i == 1) {
                cv.p = c * convs_[0].p + 1;
                cv.q = c;
            } else {
                cv.p = c * convs_[i - 1].p + convs_[i - 2].p;
                cv.q = c * convs_[i - 1].q + convs_[i - 2].q;
            }
            convs_.push_back(std::move(cv));
        }
        Int c = rule_(j, convs_);
        check_coefficient(j, c);
        coeffs_.push_back(std::move(c));
    }
}

Int ContinuedFraction::coefficient(std::size_t k) const {
    std::lock_guard<std::mutex> lock(mu_);
    materialize(k);
    return coeffs_[k];
}

Convergent ContinuedFraction::convergent(std::size_t k) const {
    std::lock_guard<std::mutex> lock(mu_);
    materialize(k);
    while (convs_.size() <= k) {
        std::size_t i = convs_.size();
        const Int& c = coeffs_[i];
        Convergent cv;
        cv.k = i;
        if (i == 0) {
            cv.p = c;
            cv.q = 1;
        } else if (i == 1) {
            cv.p = c * convs_[0].p + 1;
            cv.q = c;
        } else {
            cv.p = c * convs_[i - 1].p + convs_[i - 2].p;
            cv.q = c * convs_[i - 1].q + convs_[i - 2].q;
        }
        convs_.push_back(std::move(cv));
    }
    return convs_[k];
}

std::optional<std::size_t> ContinuedFraction::finite_length() const {
    return finite_len_;
}

std::string ContinuedFraction::str(std::size_t max_terms) const {
    std::ostringstream out;
    out << "[";
    std::size_t shown = 0;
    bool truncated = false;
    std::size_t limit = finite_len_ ? *finite_len_ : max_terms;
    if (limit > max_terms) {
        limit = max_terms;
        truncated = true;
    }
    if (!finite_len_) truncated = true;
    for (std::size_t k = 0; k < limit; ++k) {
        Int c = coefficient(k);
        if (k == 0)
            out << c.get_str();
        else
            out << (k == 1 ? ";" : ",") << c.get_str();
        ++shown;
    }
    if (truncated) out << (shown <= 1 ? ";..." : ",...");
    out << "]";
    return out.str();
}

std::shared_ptr<ContinuedFraction> ContinuedFraction::parse(std::string_view text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.size() < 3 || s.front() != '[' || s.back() != ']')
        throw std::invalid_argument("continued fraction: expected \"[c0;c1,c2,...]\"");
    s = s.substr(1, s.size() - 2);

    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
        if (ch == ';' || ch == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    parts.push_back(cur);

    bool repeat_last = false;
    if (parts.back() == "...") {
        repeat_last = true;
        parts.pop_back();
        if (parts.size() < 2)
            throw std::invalid_argument("continued fraction: \"...\" needs a coefficient to repeat");
    }
    std::vector<Int> coeffs;
    for (const std::string& part : parts) {
        if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("continued fraction: bad coefficient '" + part + "'");
        coeffs.emplace_back(part);
    }
    if (repeat_last) {
        Int last = coeffs.back();
        return periodic(std::move(coeffs), {last});
    }
    return finite(std::move(coeffs));
}

std::vector<Convergent> convergents(const ContinuedFraction& cf, std::size_t K) {
    std::vector<Convergent> out;
    out.reserve(K + 1);
    for (std::size_t k = 0; k <= K; ++k) out.push_back(cf.convergent(k));
    return out;
}

CfPtr cf_of_rational(const Rational& x) {
    if (x.sign() <= 0) throw std::invalid_argument("cf_of_rational: x > 0 required");
    std::vector<Int> coeffs;
    Int p = x.num(), q = x.den();
    while (q != 0) {
        Int c, r;
        mpz_fdiv_qr(c.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
        coeffs.push_back(c);
        p = q;
        q = r;
    }
    // Euclid already ends with a coefficient >= 2 except for single-term expansions.
    return ContinuedFraction::finite(std::move(coeffs));
}

Rational value_of_finite(const ContinuedFraction& cf) {
    auto len = cf.finite_length();
    if (!len) throw std::invalid_argument("value_of_finite: infinite continued fraction");
    Convergent last = cf.convergent(*len - 1);
    return Rational(last.p, last.q);
}

std::vector<ExponentSample> exponent_sequence(const ContinuedFraction& cf, std::size_t K) {
    if (K < 2) throw std::invalid_argument("exponent_sequence: K >= 2 required");
    std::vector<ExponentSample> out;
    for (std::size_t n = 2; n <= K; ++n) {
        Int qprev = cf.convergent(n - 1).q;
        if (qprev < 2) continue;  // relation c_n = q'^(e_n-2) is degenerate
        Int c = cf.coefficient(n);
        out.push_back({n, 2.0 + ln_mpz(c) / ln_mpz(qprev)});
    }
    return out;
}

ExponentEstimate estimate_exponents(const ContinuedFraction& cf, std::size_t K,
                                    std::size_t tail_start) {
    if (tail_start >= K) throw std::invalid_argument("estimate_exponents: tail_start < K required");
    ExponentEstimate est;
    est.series = exponent_sequence(cf, K);
    est.tail_start = tail_start;
    est.horizon = K;
    bool has_even = false, has_odd = false;
    for (const auto& s : est.series) {
        if (s.n < tail_start) continue;
        if (s.n % 2 == 0) {
            est.e_plus = has_even ? std::max(est.e_plus, s.e_n) : s.e_n;
            has_even = true;
        } else {
            est.e_minus = has_odd ? std::max(est.e_minus, s.e_n) : s.e_n;
            has_odd = true;
        }
    }
    return est;
}

Int round_pow(const Int& base, const Rational& x) {
    if (base < 1) throw std::invalid_argument("round_pow: base >= 1 required");
    if (x.sign() < 0) throw std::invalid_argument("round_pow: exponent >= 0 required");
    if (x.sign() == 0 || base == 1) return 1;
    Int u = x.num(), v = x.den();
    if (!u.fits_ulong_p() || !v.fits_ulong_p())
        throw std::invalid_argument("round_pow: exponent too large");
    unsigned long uu = u.get_ui(), vv = v.get_ui();

    Int t;
    mpz_pow_ui(t.get_mpz_t(), base.get_mpz_t(), uu);  // base^u
    Int r;
    mpz_root(r.get_mpz_t(), t.get_mpz_t(), vv);  // floor(t^(1/v))
    // round half up: r+1 iff base^(u/v) >= r + 1/2, i.e. t * 2^v >= (2r+1)^v
    Int lhs = t << vv;
    Int rhs;
    Int odd = 2 * r + 1;
    mpz_pow_ui(rhs.get_mpz_t(), odd.get_mpz_t(), vv);
    return lhs >= rhs ? r + 1 : r;
}

CfPtr construct_cf(const Rational& target_e_plus, const Rational& target_e_minus) {
    if (target_e_plus < Rational(2) || target_e_minus < Rational(2))
        throw std::invalid_argument("construct_cf: targets >= 2 required");
    Rational xp = target_e_plus - Rational(2);
    Rational xm = target_e_minus - Rational(2);
    auto rule = [xp, xm](std::size_t k, const std::vector<Convergent>& prefix) -> Int {
        if (k == 0) return 1;
        const Int& qprev = prefix.back().q;
        const Rational& x = (k % 2 == 0) ? xp : xm;
        Int c = round_pow(qprev, x);
        return c < 1 ? Int(1) : c;
    };
    std::string label =
        "construct(" + target_e_plus.str() + "," + target_e_minus.str() + ")";
    return ContinuedFraction::programmatic(rule, label);
}

}  // namespace bcz
