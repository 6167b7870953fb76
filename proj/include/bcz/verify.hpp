#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bcz {

// Deterministic generator for verification suites; identical seeds reproduce
// identical case streams on every platform.
struct SplitMix64 {
    uint64_t state;

    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in [1, n]
    uint64_t one_to(uint64_t n) { return n == 0 ? 0 : 1 + next() % n; }
};

struct SuiteResult {
    std::string name;
    uint64_t cases = 0;
    std::vector<std::string> failures;

    bool passed() const { return failures.empty(); }
};

// suite in {first_return, excursion_count, h_elimination, monotonicity,
// deep_formula, exponents}; "all" is expanded by the caller.
SuiteResult run_suite(const std::string& suite, uint64_t size, uint64_t seed);

const std::vector<std::string>& suite_names();

}  // namespace bcz
