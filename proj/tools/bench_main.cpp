// Timing harness for the two batch drivers (sweep grids, oracle
// verification), comparing the serial reference path against the OpenMP
// path and checking that both produce bit-identical results.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "spinsplit/execution.hpp"
#include "spinsplit/oracles.hpp"
#include "spinsplit/sweep.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace spinsplit;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

bool same_table(const sweep::SweepTable& a, const sweep::SweepTable& b) {
    if (a.rows.size() != b.rows.size()) return false;
    for (size_t i = 0; i < a.rows.size(); ++i)
        if (a.rows[i] != b.rows[i]) return false;
    return true;
}

void print_line(const char* name, int size, double serial_ms, double parallel_ms,
                bool identical) {
    std::printf("%s size=%d serial_ms=%.1f parallel_ms=%.1f speedup=%.2f identical=%s\n",
                name, size, serial_ms, parallel_ms, serial_ms / parallel_ms,
                identical ? "yes" : "no");
}

} // namespace

int main(int argc, char** argv) {
    int sweep_points = 200000;
    int verify_samples = 20000;

    CLI::App app{"serial vs parallel benchmark for the batch drivers"};
    app.add_option("--sweep-points", sweep_points, "grid points for the sweep benchmark");
    app.add_option("--verify-samples", verify_samples, "samples for the verification benchmark");
    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    std::printf("openmp threads=%d\n", omp_get_max_threads());
#else
    std::printf("openmp disabled (serial build)\n");
#endif

    bool all_identical = true;

    {
        sweep::SweepSpec spec = sweep::figure_preset(sweep::Figure::fig3);
        spec.range.steps = sweep_points;

        auto t0 = Clock::now();
        const auto serial = sweep::run_sweep(spec, Execution::serial);
        const double serial_ms = ms_since(t0);

        t0 = Clock::now();
        const auto parallel = sweep::run_sweep(spec, Execution::parallel);
        const double parallel_ms = ms_since(t0);

        const bool identical = same_table(serial, parallel);
        all_identical = all_identical && identical;
        print_line("sweep", sweep_points, serial_ms, parallel_ms, identical);
    }

    {
        auto t0 = Clock::now();
        const auto serial = oracles::run_verification(oracles::VerifyKind::dirac,
                                                      verify_samples, 42, 1e-12,
                                                      Execution::serial);
        const double serial_ms = ms_since(t0);

        t0 = Clock::now();
        const auto parallel = oracles::run_verification(oracles::VerifyKind::dirac,
                                                        verify_samples, 42, 1e-12,
                                                        Execution::parallel);
        const double parallel_ms = ms_since(t0);

        const bool identical = serial.max_rel_error == parallel.max_rel_error &&
                               serial.worst_index == parallel.worst_index &&
                               serial.pass && parallel.pass;
        all_identical = all_identical && identical;
        print_line("verify", verify_samples, serial_ms, parallel_ms, identical);
    }

    if (!all_identical) {
        std::cerr << "error:evaluation:serial and parallel paths disagree\n";
        return 1;
    }
    return 0;
}
