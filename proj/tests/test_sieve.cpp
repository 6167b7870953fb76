#include <doctest.h>

#include <stdexcept>

#include "bcz/sieve.hpp"

using namespace bcz;

namespace {

// trial-division oracle
int mobius_ref(std::size_t n) {
    int count = 0;
    for (std::size_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            ++count;
        }
    }
    if (n > 1) ++count;
    return count % 2 == 0 ? 1 : -1;
}

uint64_t totient_ref(std::size_t n) {
    uint64_t result = n;
    for (std::size_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

}  // namespace

TEST_CASE("N=1 base case") {
    auto t = arithmetic_tables(1);
    CHECK(t.mobius[1] == 1);
    CHECK(t.totient[1] == 1);
    CHECK_THROWS_AS(arithmetic_tables(0), std::invalid_argument);
}

TEST_CASE("hand-sieved values up to 12") {
    auto t = arithmetic_tables(12);
    int mu[] = {0, 1, -1, -1, 0, -1, 1};
    uint64_t phi[] = {0, 1, 1, 2, 2, 4, 2};
    for (std::size_t n = 1; n <= 6; ++n) {
        CHECK(t.mobius[n] == mu[n]);
        CHECK(t.totient[n] == phi[n]);
    }
    CHECK(t.mobius[12] == 0);
    CHECK(t.totient[12] == 4);
}

TEST_CASE("sieve agrees with trial division up to 10^4") {
    auto t = arithmetic_tables(10000);
    for (std::size_t n = 1; n <= 10000; ++n) {
        REQUIRE(t.mobius[n] == mobius_ref(n));
        REQUIRE(t.totient[n] == totient_ref(n));
    }
}

TEST_CASE("totient sums") {
    auto t = arithmetic_tables(10);
    CHECK(t.totient_sum(1) == 1);   // A_1
    CHECK(t.totient_sum(3) == 4);   // A_3
    CHECK(t.totient_sum(5) == 10);  // A_5
}
