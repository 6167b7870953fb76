// Compares the OpenMP kernels against their serial references: excursion
// detection over an orbit window and coprime pair counting. Run after
// building: ./bcz_bench [window] [pairs]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "bcz/excursion.hpp"
#include "bcz/verify.hpp"

using namespace bcz;
using clk = std::chrono::steady_clock;

namespace {

double ms_since(clk::time_point t0) {
    return std::chrono::duration<double, std::milli>(clk::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t window = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 4000;
    int pair_cases = argc > 2 ? std::atoi(argv[2]) : 60;

    std::printf("threads: %d\n", omp_get_max_threads());

    // window of Farey order-60 orbit values, repeated to the requested length
    std::vector<Rational> vals;
    {
        Rational a(Int(1), Int(60)), prev = a, cur(1);
        vals.push_back(a);
        while (vals.size() < window) {
            vals.push_back(cur);
            Rational k = Rational(((Rational(1) + prev) / cur).floor());
            Rational next = k * cur - prev;
            prev = cur;
            cur = next;
        }
    }
    ValueWindow win(vals);

    auto t0 = clk::now();
    auto serial = detect_excursions_serial(win, ExcursionMode::All);
    double t_serial = ms_since(t0);
    t0 = clk::now();
    auto parallel = detect_excursions(win, ExcursionMode::All);
    double t_par = ms_since(t0);
    std::printf("detect_excursions  W=%zu  found=%zu  serial %.1f ms  omp %.1f ms  (%.2fx)%s\n",
                window, parallel.size(), t_serial, t_par, t_serial / t_par,
                serial == parallel ? "" : "  MISMATCH");

    SplitMix64 rng(2024);
    double t_ser_sum = 0, t_par_sum = 0;
    unsigned long long check = 0;
    for (int i = 0; i < pair_cases; ++i) {
        long q1 = static_cast<long>(rng.one_to(1200));
        long q2 = static_cast<long>(rng.one_to(1200));
        Rational a(Int(1), Int(q1)), b(Int(1), Int(q2));
        t0 = clk::now();
        unsigned long long s = coprime_pair_count_serial(a, b);
        t_ser_sum += ms_since(t0);
        t0 = clk::now();
        unsigned long long p = coprime_pair_count(a, b);
        t_par_sum += ms_since(t0);
        if (s != p) {
            std::printf("coprime count MISMATCH at case %d\n", i);
            return 1;
        }
        check += p;
    }
    std::printf("coprime_pair_count %d cases  total=%llu  serial %.1f ms  omp %.1f ms  (%.2fx)\n",
                pair_cases, check, t_ser_sum, t_par_sum, t_ser_sum / t_par_sum);
    return 0;
}
