#include "bcz/emit.hpp"

#include <cstdio>
#include <stdexcept>

namespace bcz {

std::string fmt_rational(const Rational& x) { return x.str(); }

std::string fmt_decimal12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::string fmt_decimal12(const Rational& x) { return fmt_decimal12(x.to_double()); }

CsvWriter::CsvWriter(std::ostream& out, std::vector<std::string> header)
    : out_(out), width_(header.size()) {
    row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw std::logic_error("CsvWriter: column count mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        out_ << cells[i];
    }
    out_ << '\n';
}

}  // namespace bcz
