// Wall-clock comparison of the serial reference paths against the
// OpenMP-parallel sweeps. Not part of the test suite.

#include <chrono>
#include <cstdio>

#include "supadd/randscan.hpp"

using namespace supadd;

namespace {

template <class F>
double time_ms(F&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-28s serial %9.1f ms   parallel %9.1f ms   speedup %.2fx\n", name, serial_ms,
                parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main() {
    std::printf("workers available: %d\n", worker_count());

    {
        const auto joint = tensor_product(platypus_channel(0.5), erasure_channel(0.5, 2));
        const double t_serial = time_ms([&] { delta_star_ansatz(joint, Exec::serial); });
        const double t_parallel = time_ms([&] { delta_star_ansatz(joint, Exec::parallel); });
        report("delta_star_ansatz grid", t_serial, t_parallel);
    }

    {
        const auto ch = tensor_product(platypus_channel(0.5), amplitude_damping(0.5));
        Q1GeneralOptions opts;
        opts.exec = Exec::serial;
        const double t_serial = time_ms([&] { q1_general(ch, 8, 2024, opts); });
        opts.exec = Exec::parallel;
        const double t_parallel = time_ms([&] { q1_general(ch, 8, 2024, opts); });
        report("q1_general restarts", t_serial, t_parallel);
    }

    {
        const std::vector<double> s_grid{0.3, 0.4, 0.5};
        const double t_serial = time_ms([&] { region_sweep_ns(NsFamily::erasure, s_grid, Exec::serial); });
        const double t_parallel =
            time_ms([&] { region_sweep_ns(NsFamily::erasure, s_grid, Exec::parallel); });
        report("region_sweep_ns", t_serial, t_parallel);
    }

    {
        ScanOptions opts;
        opts.compute_interval = false;
        const double t_serial = time_ms([&] { scan_batch(6, 99, opts, Exec::serial); });
        const double t_parallel = time_ms([&] { scan_batch(6, 99, opts, Exec::parallel); });
        report("randscan batch", t_serial, t_parallel);
    }

    return 0;
}
