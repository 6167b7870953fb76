#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "bcz/rational.hpp"

namespace bcz {

// Serialization used by the CLI: rationals as "p/q", interval endpoints as
// decimals with 12 significant digits. Byte-stable under identical inputs.
std::string fmt_rational(const Rational& x);
std::string fmt_decimal12(double x);
std::string fmt_decimal12(const Rational& x);

class CsvWriter {
  public:
    CsvWriter(std::ostream& out, std::vector<std::string> header);
    void row(const std::vector<std::string>& cells);

  private:
    std::ostream& out_;
    std::size_t width_;
};

}  // namespace bcz
