#include <doctest.h>

#include <algorithm>

#include "bcz/errors.hpp"
#include "bcz/excursion.hpp"
#include "bcz/verify.hpp"

using namespace bcz;

namespace {

std::vector<Rational> over(std::initializer_list<long> nums, long den) {
    std::vector<Rational> out;
    for (long n : nums) out.emplace_back(Rational(Int(n), Int(den)));
    return out;
}

bool has(const std::vector<Excursion>& v, std::size_t s, std::size_t t) {
    return std::find(v.begin(), v.end(), Excursion{s, t}) != v.end();
}

FareyTrianglePoint golden_pt() {
    return point_from_slope(ContinuedFraction::parse("[1;1,1,...]"));
}

}  // namespace

TEST_CASE("excursions of the order-5 Farey window") {
    // a-values x5 over one period of (1/5, 1)
    auto w = over({1, 5, 4, 3, 5, 2, 5, 3, 4, 5, 1}, 5);
    auto exc = detect_excursions(w, ExcursionMode::All);
    CHECK(has(exc, 0, 5));
    CHECK(has(exc, 3, 5));
    CHECK(has(exc, 5, 10));
    CHECK(has(exc, 0, 10));
    CHECK(!has(exc, 1, 4));  // interior 4/5, 3/5 not above both endpoints
}

TEST_CASE("monotone windows only have adjacent excursions") {
    auto w = over({1, 2, 3, 4, 5, 6}, 6);
    auto exc = detect_excursions(w, ExcursionMode::All);
    CHECK(exc.size() == 5);
    for (const auto& e : exc) CHECK(e.t == e.s + 1);
}

TEST_CASE("depth condition is about interiors exceeding both endpoints") {
    auto w = over({2, 10, 8, 6, 10, 4}, 10);  // (0.2, 1, 0.8, 0.6, 1, 0.4)
    auto exc = detect_excursions(w, ExcursionMode::All);
    CHECK(has(exc, 0, 5));
    CHECK(has(exc, 0, 3));
    CHECK(has(exc, 3, 5));
    CHECK(!has(exc, 1, 4));
}

TEST_CASE("parallel detection matches the serial reference") {
    SplitMix64 rng(8);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Rational> w;
        std::size_t len = 10 + rng.next() % 300;
        for (std::size_t i = 0; i < len; ++i)
            w.emplace_back(Rational(Int(static_cast<long>(rng.one_to(400))), Int(400)));
        ValueWindow win(w);
        auto par = detect_excursions(win, ExcursionMode::All);
        auto ser = detect_excursions_serial(win, ExcursionMode::All);
        REQUIRE(par == ser);
        REQUIRE(detect_excursions(win, ExcursionMode::BetweenRecords) ==
                detect_excursions_serial(win, ExcursionMode::BetweenRecords));
    }
}

TEST_CASE("between-records chain links successive minima") {
    auto w = over({5, 7, 4, 9, 3, 8, 2}, 10);
    auto exc = detect_excursions(w, ExcursionMode::BetweenRecords);
    REQUIRE(exc.size() == 3);
    CHECK(exc[0] == Excursion{0, 2});
    CHECK(exc[1] == Excursion{2, 4});
    CHECK(exc[2] == Excursion{4, 6});
}

TEST_CASE("coprime pair counts") {
    CHECK(coprime_pair_count(Rational(Int(3), Int(5)), Rational(Int(1), Int(2))) == 0);
    CHECK(coprime_pair_count(Rational(Int(3), Int(10)), Rational(Int(7), Int(20))) == 3);
    CHECK(coprime_pair_count(Rational(Int(1), Int(5)), Rational(Int(2), Int(5))) == 4);
    CHECK(coprime_pair_count_mobius(Rational(Int(3), Int(10)), Rational(Int(7), Int(20))) == 3);
    CHECK(coprime_pair_count_mobius(Rational(Int(1), Int(5)), Rational(Int(2), Int(5))) == 4);
    CHECK(coprime_pair_count_mobius(Rational(Int(3), Int(5)), Rational(Int(1), Int(2))) == 0);
    SplitMix64 rng(12);
    for (int i = 0; i < 500; ++i) {
        long q1 = static_cast<long>(rng.one_to(70));
        long q2 = static_cast<long>(rng.one_to(70));
        Rational a{Int(static_cast<long>(rng.one_to(static_cast<uint64_t>(q1)))), Int(q1)};
        Rational b{Int(static_cast<long>(rng.one_to(static_cast<uint64_t>(q2)))), Int(q2)};
        unsigned long long direct = coprime_pair_count(a, b);
        REQUIRE(direct == coprime_pair_count_serial(a, b));
        REQUIRE(direct == coprime_pair_count_mobius(a, b));
    }
}

TEST_CASE("length estimate diagnostics") {
    LengthEstimate est = excursion_length_estimate(1.0, 1.0);
    CHECK(est.main_term == doctest::Approx(0.30396).epsilon(1e-4));
    est = excursion_length_estimate(Rational(Int(1), Int(5)), Rational(Int(2), Int(5)));
    CHECK(est.main_term == doctest::Approx(0.30396 * 12.5).epsilon(1e-4));
}

TEST_CASE("deep records of the golden orbit") {
    FareyTrianglePoint pt = golden_pt();
    pt.cfb().s->refine_to(Rational(Int(1), Int(1000000000L)));
    OrbitCursor cur(pt, Direction::Forward);
    auto deep = deepest_subsequence_bruteforce(cur, 2100);
    REQUIRE(deep.size() == 5);
    long long ns[] = {2, 8, 46, 302, 2060};
    long ps[] = {1, 3, 8, 21, 55};
    long qs[] = {1, 2, 5, 13, 34};
    long fs[] = {0, 4, 15, 44, 120};
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(deep[i].n == ns[i]);
        CHECK(deep[i].p == ps[i]);
        CHECK(deep[i].q == qs[i]);
        CHECK(deep[i].f_at == fs[i]);
    }
    // first deep value is b - a = 2 - phi = 0.3819...
    CHECK(deep[0].value.lo > Rational(Int(38), Int(100)));
    CHECK(deep[0].value.hi < Rational(Int(39), Int(100)));
}

TEST_CASE("rational orbits stop producing records after the cycle minimum") {
    FareyTrianglePoint pt =
        FareyTrianglePoint::rational(Rational(Int(3), Int(7)), Rational(Int(5), Int(7)));
    OrbitCursor cur(pt, Direction::Forward);
    auto deep = deepest_subsequence_bruteforce(cur, 3 * 18 + 5);
    REQUIRE(!deep.empty());
    for (const DeepIndex& d : deep) CHECK(d.n <= 18);  // A_7 = 18, one period
    CHECK(deep.back().value.lo == Rational(Int(1), Int(7)));  // the cycle minimum
}

TEST_CASE("formula route matches brute force and carries block structure") {
    FareyTrianglePoint golden = golden_pt();
    OrbitCursor gcur(golden, Direction::Forward);
    auto brute = deepest_subsequence_bruteforce(gcur, 100000);
    auto formula = deepest_subsequence_formula(golden, 12);
    REQUIRE(brute.size() == 7);  // records up to n = 96606 need more steps
    for (std::size_t i = 0; i < brute.size(); ++i) {
        REQUIRE(formula[i].p == brute[i].p);
        REQUIRE(formula[i].q == brute[i].q);
    }
    // golden blocks all have width c_{2k+2} = 1: block k at index k, offset 1
    for (std::size_t i = 1; i < formula.size(); ++i) {
        CHECK(formula[i].block == i - 1);
        CHECK(formula[i].offset == 1);
    }
    CHECK(formula[0].block == 0);
    CHECK(formula[0].offset == 0);

    for (auto targets : {std::pair<long, long>{2, 3}, std::pair<long, long>{4, 2}}) {
        FareyTrianglePoint pt =
            point_from_slope(construct_cf(Rational(targets.first), Rational(targets.second)));
        OrbitCursor cur(pt, Direction::Forward);
        auto b = deepest_subsequence_bruteforce(cur, 25000);
        auto f = deepest_subsequence_formula(pt, b.size());
        REQUIRE(!b.empty());
        for (std::size_t i = 0; i < f.size(); ++i) {
            REQUIRE(f[i].p == b[i].p);
            REQUIRE(f[i].q == b[i].q);
        }
    }
}

TEST_CASE("interior values of an excursion are the coprime combinations") {
    // orbit window as pairs; within an excursion from s to t, the pair of any
    // interior point is u * pair(s) + v * pair(t) with u, v >= 1 coprime, and
    // the slope order v/u increases with the index
    FareyTrianglePoint pt = golden_pt();
    OrbitCursor cur(pt, Direction::Forward);
    std::vector<std::pair<Int, Int>> pairs;
    pairs.emplace_back(Int(-1), Int(0));
    for (int i = 0; i < 320; ++i) {
        const OrbitState& st = cur.next();
        pairs.emplace_back(st.p, st.q);
    }
    // records at 46 and 302 bound a deep excursion
    std::size_t s = 46, t = 302;
    Int det = pairs[s].first * pairs[t].second - pairs[s].second * pairs[t].first;
    REQUIRE((det == 1 || det == -1));
    Rational prev_slope(-1);
    for (std::size_t j = s + 1; j < t; ++j) {
        Int x = pairs[j].first * pairs[t].second - pairs[j].second * pairs[t].first;
        Int y = pairs[j].second * pairs[s].first - pairs[j].first * pairs[s].second;
        if (det < 0) {
            x = -x;
            y = -y;
        }
        REQUIRE(x >= 1);
        REQUIRE(y >= 1);
        Int g;
        mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
        REQUIRE(g == 1);
        Rational slope(y, x);
        REQUIRE(slope > prev_slope);
        prev_slope = slope;
    }
    // Eq. (2.2): interior count matches the coprime count, certified route
    unsigned long long cnt = coprime_pair_count_certified(pt, pairs[s], pairs[t]);
    CHECK(cnt == t - s - 1);
}

TEST_CASE("block markers on the golden orbit") {
    FareyTrianglePoint pt = golden_pt();
    DeepScan scan = block_markers(pt, 6, 150000);
    REQUIRE(scan.blocks.size() >= 6);
    for (const BlockMarkers& bm : scan.blocks) {
        CHECK(bm.c_prime == Int(static_cast<long>(bm.k)));  // golden: c'_k = k
        if (bm.k >= 3) {
            CHECK(bm.log_ratio > 0.8);
            CHECK(bm.log_ratio < 1.2);
        }
        // single deep point per block
        CHECK(bm.interior.size() <= 1);
        if (bm.k >= 3)
            for (const InteriorSample& smp : bm.interior) {
                CHECK(smp.delta_n < 2.0 * smp.main_term);
                CHECK(smp.delta_n > 0.5 * smp.main_term);
            }
    }
    // measured block ends are the known record positions
    long long expect[] = {2, 8, 46, 302, 2060, 14099, 96606};
    for (std::size_t k = 0; k < scan.blocks.size() && k < 7; ++k)
        CHECK(scan.blocks[k].n_end == expect[k]);
}

TEST_CASE("markers of the (2,3) slope grow like i / a'^2") {
    FareyTrianglePoint pt = point_from_slope(construct_cf(Rational(2), Rational(3)));
    DeepScan scan = block_markers(pt, 3, 250000);
    REQUIRE(scan.blocks.size() >= 4);
    const BlockMarkers& bm = scan.blocks[3];  // block k=3: markers in (n_2, n_3)
    REQUIRE(bm.markers.size() > 4);
    // markers stay within i <= c_{2k+1} and their positions grow like i/a'^2
    // up to the two-sided constants of Lemma 2.7
    long long prev_n = -1;
    for (const MarkerSample& m : bm.markers) {
        CHECK(m.n > prev_n);
        prev_n = m.n;
        if (m.i < 2) continue;
        double ratio = static_cast<double>(m.n) / m.growth_ref;
        CHECK(ratio > 0.02);
        CHECK(ratio < 2.0);
    }
}
