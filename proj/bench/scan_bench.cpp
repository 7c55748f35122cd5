// Serial reference vs OpenMP kernel on the harness workloads.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>

#include "simplicial/experiments.hpp"

using namespace simplicial;
using experiments::Mode;

namespace {

template <class F>
double time_ms(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::string csv(const std::vector<experiments::HardnessRecord>& r) {
    std::ostringstream out;
    experiments::write_records_csv(out, r);
    return out.str();
}

}  // namespace

int main(int argc, char** argv) {
    const int E = argc > 1 ? std::atoi(argv[1]) : 12;
    std::printf("threads: %d\n", omp_get_max_threads());

    experiments::GridScan serial;
    experiments::GridScan parallel;
    const SearchOptions opts;
    const double ts = time_ms([&] { serial = experiments::scan_all_pairs(E, opts, Mode::Serial); });
    const double tp = time_ms([&] { parallel = experiments::scan_all_pairs(E, opts, Mode::Parallel); });
    std::printf("grid E=%d (%zu instances): serial %.1f ms, parallel %.1f ms, speedup %.2f, identical %s\n", E,
                serial.records.size(), ts, tp, ts / tp, csv(serial.records) == csv(parallel.records) ? "yes" : "NO");

    experiments::BettiScanConfig cfg;
    cfg.E = 200;
    cfg.replicates = 8;
    cfg.scm_samples = 5;
    for (double ls : {1.0, 3.0, 6.0}) cfg.grid.push_back({ls, 2.0, 2});
    std::vector<experiments::BettiScanRecord> bs;
    std::vector<experiments::BettiScanRecord> bp;
    const double bts = time_ms([&] { bs = experiments::betti_scan(cfg, Mode::Serial); });
    const double btp = time_ms([&] { bp = experiments::betti_scan(cfg, Mode::Parallel); });
    std::ostringstream a;
    std::ostringstream b;
    experiments::write_betti_scan_csv(a, bs);
    experiments::write_betti_scan_csv(b, bp);
    std::printf("betti-scan E=200 (%zu jobs): serial %.1f ms, parallel %.1f ms, speedup %.2f, identical %s\n",
                cfg.grid.size() * static_cast<std::size_t>(cfg.replicates), bts, btp, bts / btp,
                a.str() == b.str() ? "yes" : "NO");
    return 0;
}
