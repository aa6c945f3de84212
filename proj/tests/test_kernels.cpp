#include <doctest.h>

#include "helpers.hpp"
#include "oracle.hpp"
#include "wacasim/kernels.hpp"

using namespace wacasim;

TEST_CASE("parallel adjacency equals the serial reference") {
    for (Seed seed = 0; seed < 10; ++seed) {
        const Topology t = deploy_uniform(300 + seed * 50, 100.0, seed);
        for (double range : {1.0, 7.5, 30.0}) {
            const auto ref = kernels::adjacency_serial(t.nodes(), range);
            for (int threads : {1, 2, 3, 8}) CHECK(kernels::adjacency_parallel(t.nodes(), range, threads) == ref);
        }
    }
}

TEST_CASE("serial adjacency matches the brute-force oracle") {
    const Topology t = deploy_uniform(120, 100.0, 4);
    const std::vector<Node> raw(t.nodes().begin(), t.nodes().end());
    const auto adj = kernels::adjacency_serial(t.nodes(), 18.0);
    for (std::size_t i = 0; i < raw.size(); ++i) CHECK(adj[i] == oracle::neighbors(raw, 18.0, i));
}

TEST_CASE("large topologies use the parallel path consistently") {
    const std::size_t n = kernels::kParallelAdjacencyThreshold + 100;
    const Topology t = deploy_uniform(n, 100.0, 6, 3.0);
    const auto ref = kernels::adjacency_serial(t.nodes(), 3.0);
    for (std::size_t i = 0; i < n; i += 97) {
        const auto got = t.adjacent(i);
        CHECK(std::vector<std::size_t>(got.begin(), got.end()) == ref[i]);
    }
    CHECK(kernels::default_threads() >= 1);
}
