// Serial reference vs OpenMP kernels: unit-disk adjacency and the sweep harness.
//
//   bench_kernels [nodes=4000] [repeats=5]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "wacasim/experiments.hpp"
#include "wacasim/kernels.hpp"
#include "wacasim/netmodel.hpp"

using namespace wacasim;

namespace {

template <typename F>
double best_of(int repeats, F&& f) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    const std::size_t nodes = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 4000;
    const int repeats = argc > 2 ? std::atoi(argv[2]) : 5;
    const int threads = kernels::default_threads();
    std::printf("threads=%d nodes=%zu repeats=%d\n", threads, nodes, repeats);

    const Topology t = deploy_uniform(nodes, 100.0, 7, 1e-9);
    kernels::Adjacency a, b;
    const double ts = best_of(repeats, [&] { a = kernels::adjacency_serial(t.nodes(), 5.0); });
    const double tp = best_of(repeats, [&] { b = kernels::adjacency_parallel(t.nodes(), 5.0, threads); });
    std::printf("adjacency  serial %9.4f s  parallel %9.4f s  speedup %5.2fx  %s\n", ts, tp, ts / tp,
                a == b ? "identical" : "MISMATCH");

    SweepConfig cfg;
    cfg.runs = 5;
    std::vector<ExperimentRow> rs, rp;
    const double ss = best_of(1, [&] { rs = run_sweep_serial(cfg); });
    const double sp = best_of(1, [&] { rp = run_sweep(cfg, threads); });
    std::printf("sweep      serial %9.4f s  parallel %9.4f s  speedup %5.2fx  %s (%zu cells)\n", ss, sp, ss / sp,
                rs == rp ? "identical" : "MISMATCH", rs.size());
    return a == b && rs == rp ? 0 : 1;
}
