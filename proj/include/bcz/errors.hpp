#pragma once

#include <stdexcept>
#include <string>

namespace bcz {

// A continued-fraction source ran out of coefficients. For a finite CF this
// signals a rational slope where an irrational was required.
struct StreamExhausted : std::runtime_error {
    explicit StreamExhausted(const std::string& what) : std::runtime_error(what) {}
};

// A certified floor could not separate the quotient from an integer within
// the precision budget. Never resolved by guessing.
struct FloorAmbiguous : std::runtime_error {
    explicit FloorAmbiguous(const std::string& what) : std::runtime_error(what) {}
};

// A certified sign/order test could not separate two values within budget.
struct ComparisonAmbiguous : std::runtime_error {
    explicit ComparisonAmbiguous(const std::string& what) : std::runtime_error(what) {}
};

struct SlopeOutOfRange : std::invalid_argument {
    explicit SlopeOutOfRange(const std::string& what) : std::invalid_argument(what) {}
};

struct SingularBasis : std::runtime_error {
    explicit SingularBasis(const std::string& what) : std::runtime_error(what) {}
};

struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct NotAnExcursion : std::invalid_argument {
    explicit NotAnExcursion(const std::string& what) : std::invalid_argument(what) {}
};

// Elimination preconditions (length >= 5, interior divisibility, eligible
// maximum position) carry a reason code so callers can tell which one broke.
struct PreconditionFailed : std::invalid_argument {
    enum class Reason { Length, Divisibility, MaxPosition };
    Reason reason;
    PreconditionFailed(Reason r, const std::string& what)
        : std::invalid_argument(what), reason(r) {}
};

}  // namespace bcz
