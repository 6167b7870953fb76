// bcz: exact experiments with the BCZ first-return map on the Farey triangle.
//
// Subcommands: periodic, orbit, loglaw, excursions, verify.
// Exit codes: 0 success, 2 precondition/parse error, 3 verification failure,
// 4 precision exhaustion.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "bcz/analysis.hpp"
#include "bcz/contfrac.hpp"
#include "bcz/emit.hpp"
#include "bcz/errors.hpp"
#include "bcz/excursion.hpp"
#include "bcz/orbit.hpp"
#include "bcz/point.hpp"
#include "bcz/verify.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr unsigned long kMaxPeriodicOrder = 2000;
constexpr long long kMaxExcursionWindow = 10000;

struct PointSpec {
    std::string point;    // "a/b,c/d"
    std::string cf;       // "[c0;c1,...]"
    std::string e_plus;   // construct targets
    std::string e_minus;

    int modes() const {
        return (!point.empty() ? 1 : 0) + (!cf.empty() ? 1 : 0) +
               ((!e_plus.empty() || !e_minus.empty()) ? 1 : 0);
    }

    // Rational slopes (finite CF) are routed to the rational backend.
    bcz::FareyTrianglePoint resolve() const {
        using namespace bcz;
        if (modes() != 1)
            throw std::invalid_argument("exactly one of --point, --cf, --eplus/--eminus required");
        if (!point.empty()) {
            auto comma = point.find(',');
            if (comma == std::string::npos)
                throw std::invalid_argument("--point expects \"a/b,c/d\"");
            Rational a = Rational::parse(point.substr(0, comma));
            Rational b = Rational::parse(point.substr(comma + 1));
            return FareyTrianglePoint::rational(a, b);
        }
        if (!cf.empty()) {
            CfPtr src = ContinuedFraction::parse(cf);
            if (src->finite_length()) {
                Rational s = value_of_finite(*src);
                if (s <= Rational(1))
                    throw SlopeOutOfRange("finite slope must exceed 1 for (1/s, 1)");
                return FareyTrianglePoint::rational(Rational(1) / s, Rational(1));
            }
            return point_from_slope(src);
        }
        if (e_plus.empty() || e_minus.empty())
            throw std::invalid_argument("--eplus and --eminus must be given together");
        return point_from_slope(
            construct_cf(Rational::parse(e_plus), Rational::parse(e_minus)));
    }

    std::string describe() const {
        if (!point.empty()) return point;
        if (!cf.empty()) return cf;
        return "targets(" + e_plus + "," + e_minus + ")";
    }
};

std::ostream& open_sink(const std::string& path, std::ofstream& file) {
    if (path.empty()) return std::cout;
    file.open(path, std::ios::binary | std::ios::trunc);
    if (!file) throw std::invalid_argument("cannot open output file '" + path + "'");
    return file;
}

std::string fmt_value(const bcz::Interval& iv, bool rational_backend, bool lo) {
    if (rational_backend) return bcz::fmt_rational(iv.lo);
    return bcz::fmt_decimal12(lo ? iv.lo : iv.hi);
}

int cmd_periodic(unsigned long order, const std::string& format, const std::string& out_path) {
    if (order < 1 || order > kMaxPeriodicOrder)
        throw std::invalid_argument("--order must be in [1, " + std::to_string(kMaxPeriodicOrder) +
                                    "]");
    bcz::PeriodicOrbitReport rep = bcz::periodic_orbit(order);
    std::ofstream file;
    std::ostream& out = open_sink(out_path, file);
    bool ok = rep.hall_shiu_ok && rep.period_ok && rep.farey_match_ok;
    long long f_period = static_cast<long long>(rep.itinerary_sum) -
                         3LL * static_cast<long long>(rep.period);
    if (format == "json") {
        json j;
        j["order"] = rep.order;
        j["period"] = rep.period;
        j["itinerary_sum"] = rep.itinerary_sum;
        j["f_period"] = f_period;
        j["hall_shiu_ok"] = rep.hall_shiu_ok;
        j["period_ok"] = rep.period_ok;
        j["farey_ok"] = rep.farey_match_ok;
        j["itinerary"] = rep.itinerary;
        out << j.dump() << "\n";
    } else {
        bcz::CsvWriter csv(out, {"order", "period", "itinerary_sum", "f_period", "hall_shiu_ok",
                                 "period_ok", "farey_ok", "itinerary"});
        std::ostringstream it;
        for (std::size_t i = 0; i < rep.itinerary.size(); ++i)
            it << (i ? " " : "") << rep.itinerary[i];
        csv.row({std::to_string(rep.order), std::to_string(rep.period),
                 std::to_string(rep.itinerary_sum), std::to_string(f_period),
                 rep.hall_shiu_ok ? "1" : "0", rep.period_ok ? "1" : "0",
                 rep.farey_match_ok ? "1" : "0", it.str()});
    }
    return ok ? 0 : 3;
}

int cmd_orbit(const PointSpec& spec, long long steps, const std::string& direction,
              unsigned precision_bits, const std::string& format, const std::string& out_path) {
    using namespace bcz;
    if (steps < 1) throw std::invalid_argument("--steps must be >= 1");
    FareyTrianglePoint pt = spec.resolve();
    Direction dir = direction == "backward" ? Direction::Backward : Direction::Forward;
    OrbitCursor cursor(pt, dir, precision_bits);
    bool rational = pt.is_rational();
    const bool cf = !rational;
    std::size_t next_conv = (dir == Direction::Forward) ? 0 : 1;
    Int bp(-1), bq(0);

    std::ofstream file;
    std::ostream& out = open_sink(out_path, file);
    std::optional<CsvWriter> csv;
    json rows = json::array();
    if (format != "json")
        csv.emplace(out, std::vector<std::string>{"n", "k_n", "f_n", "a_lo", "a_hi", "deep",
                                                  "block_end"});
    for (long long i = 0; i < steps; ++i) {
        const OrbitState& st = cursor.next();
        bool deep = cursor.compare(st.p, st.q, bp, bq) < 0;
        bool block_end = false;
        if (deep) {
            bp = st.p;
            bq = st.q;
            if (cf) {
                Convergent c = pt.cfb().cf->convergent(next_conv);
                bool match = (dir == Direction::Forward) ? (st.p == c.p && st.q == c.q)
                                                         : (st.p == -c.p && st.q == -c.q);
                if (match) {
                    block_end = true;
                    next_conv += 2;
                }
            }
        }
        Interval a = cursor.value(st.p, st.q);
        if (csv) {
            csv->row({std::to_string(st.n), st.k.get_str(), st.f.get_str(),
                      fmt_value(a, rational, true), fmt_value(a, rational, false),
                      deep ? "1" : "0", block_end ? "1" : "0"});
        } else {
            json r;
            r["n"] = st.n;
            r["k_n"] = st.k.get_str();
            r["f_n"] = st.f.get_str();
            r["a_lo"] = fmt_value(a, rational, true);
            r["a_hi"] = fmt_value(a, rational, false);
            r["deep"] = deep ? 1 : 0;
            r["block_end"] = block_end ? 1 : 0;
            rows.push_back(r);
        }
    }
    if (!csv) out << rows.dump() << "\n";
    return 0;
}

int cmd_loglaw(const PointSpec& spec, long long steps, const std::string& direction,
               unsigned precision_bits, double tolerance, long long tail_from,
               const std::string& out_path) {
    using namespace bcz;
    if (steps < 2) throw std::invalid_argument("--steps must be >= 2");
    FareyTrianglePoint pt = spec.resolve();
    if (pt.is_rational())
        throw std::invalid_argument(
            "loglaw needs an irrational slope (--cf with \"...\" or --eplus/--eminus)");
    Direction dir = direction == "backward" ? Direction::Backward : Direction::Forward;

    std::ofstream file;
    std::optional<CsvWriter> probes_csv;
    if (!out_path.empty()) {
        std::ostream& sink = open_sink(out_path, file);
        probes_csv.emplace(sink,
                           std::vector<std::string>{"n", "f_n", "ratio", "deep", "block_end"});
    }
    auto sink_fn = [&probes_csv](const LogLawProbe& p) {
        if (!probes_csv) return;
        probes_csv->row({std::to_string(p.n), p.f.get_str(), fmt_decimal12(p.ratio),
                         p.deep ? "1" : "0", p.block_end ? "1" : "0"});
    };
    LogLawSummary sum = loglaw_probe(pt, steps, dir, tail_from, sink_fn, precision_bits);

    ExponentEstimate est = estimate_exponents(*pt.cfb().cf, 16, 8);
    double theory = theoretical_limsup(est.e_plus, est.e_minus, dir);
    double probe = !sum.blockends.empty() && !std::isnan(sum.blockends.back().ratio)
                       ? sum.blockends.back().ratio
                       : sum.tail_max_ratio;
    bool pass = !std::isnan(probe) && std::fabs(probe - theory) <= tolerance;

    json j;
    j["point"] = spec.describe();
    j["direction"] = dir == Direction::Forward ? "forward" : "backward";
    j["steps"] = steps;
    j["e_plus_est"] = est.e_plus;
    j["e_minus_est"] = est.e_minus;
    j["theory_value"] = theory;
    j["tail_from"] = sum.tail_from;
    j["tail_max_ratio"] = sum.tail_max_ratio;
    j["tail_argmax"] = sum.tail_argmax;
    json bl = json::array();
    for (const auto& b : sum.blockends) {
        json e;
        e["k"] = b.k;
        e["n"] = b.n;
        e["f"] = b.f.get_str();
        e["ratio"] = b.ratio;
        bl.push_back(e);
    }
    j["blockend_ratios"] = bl;
    j["tolerance"] = tolerance;
    j["verdict"] = pass ? "pass" : "fail";
    std::cout << j.dump() << "\n";
    return pass ? 0 : 3;
}

int cmd_excursions(const PointSpec& spec, long long steps, unsigned precision_bits,
                   const std::string& out_path) {
    using namespace bcz;
    if (steps < 1 || steps > kMaxExcursionWindow)
        throw std::invalid_argument("--steps must be in [1, " +
                                    std::to_string(kMaxExcursionWindow) + "] for excursions");
    FareyTrianglePoint pt = spec.resolve();
    OrbitCursor cursor(pt, Direction::Forward, precision_bits);
    std::vector<std::pair<Int, Int>> pairs;
    pairs.reserve(static_cast<std::size_t>(steps) + 1);
    pairs.emplace_back(Int(-1), Int(0));  // a_0
    std::vector<Rational> rvals;
    bool rational = pt.is_rational();
    if (rational) rvals.push_back(pt.rat().a);
    for (long long i = 0; i < steps; ++i) {
        const OrbitState& st = cursor.next();
        pairs.emplace_back(st.p, st.q);
        if (rational) rvals.push_back(cursor.value(st.p, st.q).lo);
    }
    std::vector<Excursion> exc;
    ValueWindow window = rational ? ValueWindow(rvals) : ValueWindow(pairs, pt, precision_bits);
    exc = detect_excursions(window, ExcursionMode::All);

    std::ofstream file;
    std::ostream& out = open_sink(out_path, file);
    CsvWriter csv(out, {"s", "t", "len", "a_s", "a_t", "coprime_count", "main_term", "ratio"});
    constexpr double pi = 3.14159265358979323846;
    for (const Excursion& e : exc) {
        Interval as = window.value(e.s), at = window.value(e.t);
        unsigned long long cnt;
        if (rational) {
            cnt = coprime_pair_count(as.lo, at.lo);
        } else {
            cnt = coprime_pair_count_certified(pt, pairs[e.s], pairs[e.t], precision_bits);
        }
        double a_mid = as.mid_double(), t_mid = at.mid_double();
        LengthEstimate est = excursion_length_estimate(a_mid, t_mid);
        double ratio = static_cast<double>(e.length()) * a_mid * t_mid * pi * pi / 3.0;
        csv.row({std::to_string(e.s), std::to_string(e.t), std::to_string(e.length()),
                 fmt_value(as, rational, true), fmt_value(at, rational, true),
                 std::to_string(cnt), fmt_decimal12(est.main_term), fmt_decimal12(ratio)});
    }
    return 0;
}

int cmd_verify(const std::string& suite, uint64_t size, uint64_t seed) {
    using namespace bcz;
    std::vector<std::string> names;
    if (suite == "all")
        names = suite_names();
    else
        names.push_back(suite);
    json out;
    json suites = json::array();
    bool ok = true;
    for (const std::string& name : names) {
        SuiteResult res = run_suite(name, size, seed);
        json r;
        r["name"] = res.name;
        r["cases"] = res.cases;
        r["failures"] = res.failures;
        suites.push_back(r);
        ok = ok && res.passed();
        std::cerr << (res.passed() ? "[ok]   " : "[FAIL] ") << name << " (" << res.cases
                  << " cases)\n";
    }
    out["suites"] = suites;
    out["seed"] = seed;
    out["size"] = size;
    out["ok"] = ok;
    std::cout << out.dump() << "\n";
    return ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact arithmetic for the BCZ first-return map on the Farey triangle"};
    app.require_subcommand(1);

    PointSpec spec;
    long long steps = 100;
    unsigned long order = 3;
    std::string direction = "forward";
    std::string format = "csv";
    std::string out_path;
    unsigned precision_bits = bcz::kDefaultMaxBits;
    double tolerance = 0.15;
    long long tail_from = 0;
    std::string suite = "all";
    uint64_t size = 100, seed = 1;

    auto add_point_opts = [&spec](CLI::App* cmd) {
        cmd->add_option("--point", spec.point, "rational point \"a/b,c/d\"");
        cmd->add_option("--cf", spec.cf, "slope as continued fraction \"[c0;c1,...]\"");
        cmd->add_option("--eplus", spec.e_plus, "target even Diophantine exponent (>= 2)");
        cmd->add_option("--eminus", spec.e_minus, "target odd Diophantine exponent (>= 2)");
    };

    CLI::App* periodic = app.add_subcommand("periodic", "Farey periodic orbit of (1/n, 1)");
    periodic->add_option("--order", order, "Farey order n")->required();
    periodic->add_option("--format", format, "csv|json");
    periodic->add_option("--out", out_path, "output path (default stdout)");

    CLI::App* orbit = app.add_subcommand("orbit", "stream orbit states as CSV/JSON");
    add_point_opts(orbit);
    orbit->add_option("--steps", steps, "number of steps")->required();
    orbit->add_option("--direction", direction, "forward|backward");
    orbit->add_option("--precision-bits", precision_bits, "certified floor budget");
    orbit->add_option("--format", format, "csv|json");
    orbit->add_option("--out", out_path, "output path (default stdout)");

    CLI::App* loglaw = app.add_subcommand("loglaw", "log-law probe summary (JSON)");
    add_point_opts(loglaw);
    loglaw->add_option("--steps", steps, "number of steps")->required();
    loglaw->add_option("--direction", direction, "forward|backward");
    loglaw->add_option("--precision-bits", precision_bits, "certified floor budget");
    loglaw->add_option("--tolerance", tolerance, "verdict tolerance on |probe - theory|");
    loglaw->add_option("--tail-from", tail_from, "tail window start (default sqrt(N))");
    loglaw->add_option("--out", out_path, "probe CSV path");

    CLI::App* excursions = app.add_subcommand("excursions", "excursions of an orbit window (CSV)");
    add_point_opts(excursions);
    excursions->add_option("--steps", steps, "window length (<= 10000)")->required();
    excursions->add_option("--precision-bits", precision_bits, "certified budget");
    excursions->add_option("--out", out_path, "output path (default stdout)");

    CLI::App* verify = app.add_subcommand("verify", "run property suites");
    verify->add_option("--suite", suite,
                       "first_return|excursion_count|h_elimination|monotonicity|deep_formula|"
                       "exponents|all");
    verify->add_option("--size", size, "suite size parameter");
    verify->add_option("--seed", seed, "deterministic seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (periodic->parsed()) return cmd_periodic(order, format, out_path);
        if (orbit->parsed())
            return cmd_orbit(spec, steps, direction, precision_bits, format, out_path);
        if (loglaw->parsed())
            return cmd_loglaw(spec, steps, direction, precision_bits, tolerance, tail_from,
                              out_path);
        if (excursions->parsed()) return cmd_excursions(spec, steps, precision_bits, out_path);
        if (verify->parsed()) return cmd_verify(suite, size, seed);
    } catch (const bcz::FloorAmbiguous& e) {
        std::cerr << "precision exhausted: " << e.what() << "\n";
        return 4;
    } catch (const bcz::ComparisonAmbiguous& e) {
        std::cerr << "precision exhausted: " << e.what() << "\n";
        return 4;
    } catch (const bcz::StreamExhausted& e) {
        std::cerr << "precision exhausted: " << e.what() << "\n";
        return 4;
    } catch (const bcz::BudgetExceeded& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
