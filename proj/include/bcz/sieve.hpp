#pragma once

#include <cstdint>
#include <vector>

namespace bcz {

// Mobius and totient tables for 1..N, index 0 unused.
struct ArithmeticTables {
    std::vector<int8_t> mobius;
    std::vector<uint64_t> totient;

    uint64_t totient_sum(std::size_t n) const;  // A_n = sum_{m<=n} phi(m)
};

// Linear sieve; N >= 1.
ArithmeticTables arithmetic_tables(std::size_t n);

}  // namespace bcz
