#include "bcz/verify.hpp"

#include <omp.h>

#include <algorithm>
#include <sstream>

#include "bcz/analysis.hpp"
#include "bcz/contfrac.hpp"
#include "bcz/errors.hpp"
#include "bcz/excursion.hpp"
#include "bcz/lattice.hpp"
#include "bcz/orbit.hpp"
#include "bcz/point.hpp"

namespace bcz {

namespace {

FareyTrianglePoint random_omega_point(SplitMix64& rng, uint64_t max_den) {
    while (true) {
        Int q1(static_cast<unsigned long>(rng.one_to(max_den)));
        Int q2(static_cast<unsigned long>(rng.one_to(max_den)));
        Int p1(static_cast<unsigned long>(rng.one_to(q1.get_ui())));
        Int p2(static_cast<unsigned long>(rng.one_to(q2.get_ui())));
        Rational a(p1, q1), b(p2, q2);
        if (a + b > Rational(1)) return FareyTrianglePoint::rational(a, b);
    }
}

// Farey orbit window of order n over one period including both endpoints.
std::vector<Rational> farey_window(unsigned long n) {
    std::vector<Rational> w;
    auto rep = periodic_orbit(n, /*keep_itinerary=*/true, /*check_farey=*/false);
    Rational a(Int(1), Int(n)), b(1);
    w.push_back(a);
    Rational prev = a, cur = b;
    for (unsigned long long i = 0; i < rep.period; ++i) {
        w.push_back(cur);
        Rational next = Rational(rep.itinerary[i]) * cur - prev;
        prev = cur;
        cur = next;
    }
    // w now holds a_0 .. a_{A_n}; a_{A_n} = a_0
    w.pop_back();
    w.push_back(a);
    return w;
}

void suite_first_return(SuiteResult& res, uint64_t size, uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<FareyTrianglePoint> pts;
    for (uint64_t i = 0; i < size; ++i) pts.push_back(random_omega_point(rng, 60));
    std::vector<int> bad(pts.size(), 0);
#pragma omp parallel for schedule(dynamic, 8)
    for (long long i = 0; i < static_cast<long long>(pts.size()); ++i)
        if (!first_return_check(pts[i])) bad[i] = 1;
    res.cases += size;
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (bad[i])
            res.failures.push_back("first_return: Eq(1.1) fails at (" + pts[i].rat().a.str() +
                                   "," + pts[i].rat().b.str() + ")");
}

void suite_excursion_count(SuiteResult& res, uint64_t size, uint64_t seed) {
    // exhaustive over Farey orders <= min(size, 50): every excursion satisfies
    // length - 1 == coprime count of its endpoint values
    unsigned long max_order = static_cast<unsigned long>(std::min<uint64_t>(size, 50));
    for (unsigned long n = 1; n <= max_order; ++n) {
        std::vector<Rational> w = farey_window(n);
        auto exc = detect_excursions(w, ExcursionMode::All);
        res.cases += exc.size();
        for (const Excursion& e : exc) {
            unsigned long long cnt = coprime_pair_count(w[e.s], w[e.t]);
            if (cnt != e.length() - 1) {
                std::ostringstream os;
                os << "excursion_count: order " << n << " (" << e.s << "," << e.t
                   << "): len-1=" << e.length() - 1 << " vs count=" << cnt;
                res.failures.push_back(os.str());
            }
            // Remark 2.3 endpoint identities
            if (e.length() >= 2) {
                const Rational &as = w[e.s], &at = w[e.t];
                Rational a1 = Rational(((Rational(1) - at) / as).floor()) * as + at;
                Rational am = as + Rational(((Rational(1) - as) / at).floor()) * at;
                if (a1 != w[e.s + 1])
                    res.failures.push_back("excursion_count: Remark 2.3 start formula fails");
                if (am != w[e.t - 1])
                    res.failures.push_back("excursion_count: Remark 2.3 end formula fails");
            }
        }
    }
    // Mobius route equals the direct count on random pairs
    SplitMix64 rng(seed ^ 0xabcdef1234ULL);
    uint64_t pairs = std::max<uint64_t>(size * 20, 100);
    for (uint64_t i = 0; i < pairs; ++i) {
        Int q1(static_cast<unsigned long>(rng.one_to(80)));
        Int q2(static_cast<unsigned long>(rng.one_to(80)));
        Rational a(Int(static_cast<unsigned long>(rng.one_to(q1.get_ui()))), q1);
        Rational b(Int(static_cast<unsigned long>(rng.one_to(q2.get_ui()))), q2);
        ++res.cases;
        unsigned long long direct = coprime_pair_count(a, b);
        unsigned long long mob = coprime_pair_count_mobius(a, b);
        if (direct != mob)
            res.failures.push_back("excursion_count: mobius " + std::to_string(mob) +
                                   " != direct " + std::to_string(direct) + " at (" + a.str() +
                                   "," + b.str() + ")");
    }
}

void suite_h_elimination(SuiteResult& res, uint64_t size, uint64_t seed) {
    SplitMix64 rng(seed ^ 0x5eedULL);
    // eligible sequences from orbit segments: h invariant under elimination
    for (uint64_t it = 0; it < size; ++it) {
        unsigned long n = static_cast<unsigned long>(2 + rng.one_to(40));
        std::vector<Rational> w = farey_window(n);
        if (w.size() < 6) continue;
        std::size_t len = 5 + static_cast<std::size_t>(rng.next() % 12);
        std::size_t start = rng.next() % (w.size() - len < 1 ? 1 : w.size() - len);
        std::vector<Rational> seq(w.begin() + static_cast<std::ptrdiff_t>(start),
                                  w.begin() + static_cast<std::ptrdiff_t>(start + len));
        ++res.cases;
        Rational before = h_value(seq);
        try {
            std::vector<Rational> after = eliminate_max(seq);
            if (h_value(after) != before) {
                res.failures.push_back("h_elimination: h changed by eliminate_max");
                continue;
            }
            std::vector<Rational> reduced = reduce_fully(seq);
            if (reduced.size() >= 3 && h_value(reduced) != before)
                res.failures.push_back("h_elimination: h changed by reduce_fully");
        } catch (const PreconditionFailed&) {
            // ineligible sample; counts as exercised precondition
        }
    }
    // f_n = h(a_0..a_{n+1}) on rational orbits
    for (unsigned long n : {3UL, 5UL, 7UL, 12UL}) {
        std::vector<Rational> w = farey_window(n);
        OrbitCursor cur(FareyTrianglePoint::rational(Rational(Int(1), Int(n)), Rational(1)),
                        Direction::Forward);
        for (std::size_t m = 1; m + 1 < w.size(); ++m) {
            const OrbitState& st = cur.next();
            ++res.cases;
            std::vector<Rational> prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(m + 2));
            if (Rational(st.f) != h_value(prefix)) {
                res.failures.push_back("h_elimination: f_n != h(a_0..a_{n+1}) at order " +
                                       std::to_string(n) + " n=" + std::to_string(m));
                break;
            }
        }
    }
}

void suite_monotonicity(SuiteResult& res, uint64_t size, uint64_t seed) {
    (void)seed;
    unsigned long max_order = static_cast<unsigned long>(std::min<uint64_t>(size, 50));
    for (unsigned long n = 2; n <= max_order; ++n) {
        std::vector<Rational> w = farey_window(n);
        auto exc = detect_excursions(w, ExcursionMode::All);
        for (const Excursion& e : exc) {
            if (e.length() < 4) continue;
            ++res.cases;
            std::vector<Rational> slice(w.begin() + static_cast<std::ptrdiff_t>(e.s),
                                        w.begin() + static_cast<std::ptrdiff_t>(e.t + 1));
            bool ok = false;
            try {
                ok = check_monotonicity(slice);
            } catch (const NotAnExcursion&) {
                ok = false;
            }
            if (!ok) {
                std::ostringstream os;
                os << "monotonicity: order " << n << " excursion (" << e.s << "," << e.t
                   << ") violates f_1 > f_i > f_{m-1}";
                res.failures.push_back(os.str());
            }
        }
    }
}

void suite_deep_formula(SuiteResult& res, uint64_t size, uint64_t seed) {
    (void)seed;
    struct Case {
        const char* name;
        CfPtr cf;
        long long budget;
    };
    std::vector<Case> cases;
    cases.push_back({"golden", ContinuedFraction::parse("[1;1,1,...]"), 3000000});
    cases.push_back({"e23", construct_cf(Rational(2), Rational(3)), 400000});
    cases.push_back({"e42", construct_cf(Rational(4), Rational(2)), 40000});
    for (auto& c : cases) {
        FareyTrianglePoint pt = point_from_slope(c.cf);
        OrbitCursor cur(pt, Direction::Forward);
        auto brute = deepest_subsequence_bruteforce(cur, c.budget);
        auto formula = deepest_subsequence_formula(pt, std::max<std::size_t>(size, brute.size()));
        std::size_t overlap = std::min(brute.size(), formula.size());
        res.cases += overlap;
        for (std::size_t i = 0; i < overlap; ++i) {
            if (brute[i].p != formula[i].p || brute[i].q != formula[i].q) {
                std::ostringstream os;
                os << "deep_formula[" << c.name << "]: mismatch at i=" << i << " brute ("
                   << brute[i].p.get_str() << "," << brute[i].q.get_str() << ") formula ("
                   << formula[i].p.get_str() << "," << formula[i].q.get_str() << ")";
                res.failures.push_back(os.str());
                break;
            }
        }
        // formula self-checks: strictly decreasing values, coprime pairs
        OrbitCursor chk(pt, Direction::Forward);
        for (std::size_t i = 0; i + 1 < formula.size(); ++i) {
            ++res.cases;
            Int g;
            mpz_gcd(g.get_mpz_t(), formula[i].p.get_mpz_t(), formula[i].q.get_mpz_t());
            if (g != 1) res.failures.push_back("deep_formula: non-coprime formula pair");
            if (chk.compare(formula[i + 1].p, formula[i + 1].q, formula[i].p, formula[i].q) >= 0)
                res.failures.push_back("deep_formula: values not strictly decreasing");
        }
    }
}

void suite_exponents(SuiteResult& res, uint64_t size, uint64_t seed) {
    SplitMix64 rng(seed ^ 0x9212ULL);
    // cf_of_rational round trip
    for (uint64_t i = 0; i < size; ++i) {
        Int q(static_cast<unsigned long>(rng.one_to(100000)));
        Int p(static_cast<unsigned long>(rng.one_to(200000)));
        Rational x(p, q);
        ++res.cases;
        CfPtr cf = cf_of_rational(x);
        if (value_of_finite(*cf) != x) {
            res.failures.push_back("exponents: cf_of_rational round trip fails at " + x.str());
            continue;
        }
        auto len = cf->finite_length();
        if (*len > 1 && cf->coefficient(*len - 1) < 2)
            res.failures.push_back("exponents: non-canonical tail at " + x.str());
    }
    // determinant identity and Fibonacci growth on assorted sources
    std::vector<CfPtr> cfs = {ContinuedFraction::parse("[1;1,1,...]"),
                              ContinuedFraction::parse("[2;2,2,...]"),
                              construct_cf(Rational(2), Rational(3)),
                              construct_cf(Rational(3), Rational(2))};
    for (const CfPtr& cf : cfs) {
        Int fib_prev(1), fib_cur(1);  // F(k+1) lower bound for q'_k
        auto convs = convergents(*cf, 18);
        for (std::size_t k = 1; k <= 18; ++k) {
            ++res.cases;
            Int det = convs[k].p * convs[k - 1].q - convs[k - 1].p * convs[k].q;
            if (det != ((k - 1) % 2 == 0 ? 1 : -1) * Int(1))
                res.failures.push_back("exponents: determinant identity fails at k=" +
                                       std::to_string(k));
            Int fib_next = fib_prev + fib_cur;
            fib_prev = fib_cur;
            fib_cur = fib_next;
            if (convs[k].q < fib_prev)
                res.failures.push_back("exponents: q'_k below Fibonacci bound");
        }
    }
    // constructed targets are recovered by the finite-horizon estimate
    struct Target {
        Rational ep, em;
        double tol;
    };
    for (const Target& t : {Target{Rational(2), Rational(2), 1e-12},
                            Target{Rational(2), Rational(3), 1e-9},
                            Target{Rational(4), Rational(2), 1e-9}}) {
        ++res.cases;
        CfPtr cf = construct_cf(t.ep, t.em);
        ExponentEstimate est = estimate_exponents(*cf, 16, 8);
        if (std::abs(est.e_plus - t.ep.to_double()) > t.tol ||
            std::abs(est.e_minus - t.em.to_double()) > t.tol) {
            std::ostringstream os;
            os << "exponents: construct(" << t.ep.str() << "," << t.em.str() << ") estimated ("
               << est.e_plus << "," << est.e_minus << ")";
            res.failures.push_back(os.str());
        }
    }
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"first_return",  "excursion_count",
                                                   "h_elimination", "monotonicity",
                                                   "deep_formula",  "exponents"};
    return names;
}

SuiteResult run_suite(const std::string& suite, uint64_t size, uint64_t seed) {
    SuiteResult res;
    res.name = suite;
    if (size == 0) return res;  // vacuous pass
    if (suite == "first_return")
        suite_first_return(res, size, seed);
    else if (suite == "excursion_count")
        suite_excursion_count(res, size, seed);
    else if (suite == "h_elimination")
        suite_h_elimination(res, size, seed);
    else if (suite == "monotonicity")
        suite_monotonicity(res, size, seed);
    else if (suite == "deep_formula")
        suite_deep_formula(res, size, seed);
    else if (suite == "exponents")
        suite_exponents(res, size, seed);
    else
        throw std::invalid_argument("unknown suite '" + suite + "'");
    return res;
}

}  // namespace bcz
