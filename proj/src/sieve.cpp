#include "bcz/sieve.hpp"

#include <stdexcept>

namespace bcz {

ArithmeticTables arithmetic_tables(std::size_t n) {
    if (n < 1) throw std::invalid_argument("arithmetic_tables: N >= 1 required");
    ArithmeticTables t;
    t.mobius.assign(n + 1, 0);
    t.totient.assign(n + 1, 0);
    t.mobius[1] = 1;
    t.totient[1] = 1;
    std::vector<uint32_t> primes;
    std::vector<bool> composite(n + 1, false);
    for (std::size_t i = 2; i <= n; ++i) {
        if (!composite[i]) {
            primes.push_back(static_cast<uint32_t>(i));
            t.mobius[i] = -1;
            t.totient[i] = i - 1;
        }
        for (uint32_t p : primes) {
            std::size_t ip = i * p;
            if (ip > n) break;
            composite[ip] = true;
            if (i % p == 0) {
                t.mobius[ip] = 0;
                t.totient[ip] = t.totient[i] * p;
                break;
            }
            t.mobius[ip] = -t.mobius[i];
            t.totient[ip] = t.totient[i] * (p - 1);
        }
    }
    return t;
}

uint64_t ArithmeticTables::totient_sum(std::size_t n) const {
    uint64_t s = 0;
    for (std::size_t m = 1; m <= n && m < totient.size(); ++m) s += totient[m];
    return s;
}

}  // namespace bcz
