#include <doctest.h>

#include "bcz/rational.hpp"
#include "bcz/verify.hpp"

using namespace bcz;

TEST_CASE("rationals are stored reduced with positive denominator") {
    Rational x(Int(6), Int(-4));
    CHECK(x.num() == -3);
    CHECK(x.den() == 2);
    CHECK(x.str() == "-3/2");
    CHECK(Rational(Int(0), Int(7)).str() == "0");
    CHECK_THROWS_AS(Rational(Int(1), Int(0)), std::invalid_argument);
}

TEST_CASE("parse accepts p/q and integers, rejects decimals") {
    CHECK(Rational::parse("7/5") == Rational(Int(7), Int(5)));
    CHECK(Rational::parse("-3") == Rational(-3));
    CHECK(Rational::parse("4/6") == Rational(Int(2), Int(3)));
    CHECK_THROWS_AS(Rational::parse("0.5"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("x/y"), std::invalid_argument);
}

TEST_CASE("floor, ceil and half-up rounding") {
    CHECK(Rational(Int(7), Int(2)).floor() == 3);
    CHECK(Rational(Int(-7), Int(2)).floor() == -4);
    CHECK(Rational(Int(7), Int(2)).ceil() == 4);
    CHECK(Rational(Int(7), Int(2)).round_half_up() == 4);  // ties up
    CHECK(Rational(Int(-7), Int(2)).round_half_up() == -3);
    CHECK(Rational(Int(10), Int(3)).round_half_up() == 3);
}

TEST_CASE("exact arithmetic never rounds") {
    Rational a(Int(1), Int(3)), b(Int(1), Int(6));
    CHECK(a + b == Rational(Int(1), Int(2)));
    CHECK(a - b == Rational(Int(1), Int(6)));
    CHECK(a * b == Rational(Int(1), Int(18)));
    CHECK(a / b == Rational(2));
    CHECK_THROWS_AS(a / Rational(0), std::invalid_argument);
}

TEST_CASE("interval arithmetic contains exact values at random rational points") {
    SplitMix64 rng(42);
    for (int it = 0; it < 2000; ++it) {
        auto rnd = [&rng]() {
            long num = static_cast<long>(rng.one_to(200)) - 100;
            long den = static_cast<long>(rng.one_to(60));
            return Rational(Int(num), Int(den));
        };
        Rational lo1 = rnd(), w1 = abs(rnd()), lo2 = rnd(), w2 = abs(rnd());
        Interval x(lo1, lo1 + w1), y(lo2, lo2 + w2);
        // pick interior rational points
        Rational px = lo1 + w1 * Rational(Int(rng.one_to(7)), Int(8));
        Rational py = lo2 + w2 * Rational(Int(rng.one_to(7)), Int(8));
        CHECK((x + y).contains(px + py));
        CHECK((x - y).contains(px - py));
        CHECK((x * y).contains(px * py));
        if (lo2.sign() > 0) {
            CHECK((x / y).contains(px / py));
            CHECK(reciprocal(y).contains(Rational(1) / py));
        }
    }
}

TEST_CASE("interval invariants") {
    CHECK_THROWS_AS(Interval(Rational(2), Rational(1)), std::invalid_argument);
    CHECK_THROWS_AS(reciprocal(Interval(Rational(-1), Rational(1))), std::invalid_argument);
    Interval p(Rational(Int(1), Int(3)));
    CHECK(p.is_point());
    CHECK(p.width() == Rational(0));
}
