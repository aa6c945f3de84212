#include "wacasim/kernels.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace wacasim::kernels {

namespace {

void fill_row(std::span<const Node> nodes, double range, std::size_t i,
              std::vector<std::size_t>& row) {
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        if (j != i && distance(nodes[i].pos, nodes[j].pos) < range) row.push_back(j);
    }
}

}  // namespace

Adjacency adjacency_serial(std::span<const Node> nodes, double range) {
    Adjacency adj(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) fill_row(nodes, range, i, adj[i]);
    return adj;
}

Adjacency adjacency_parallel(std::span<const Node> nodes, double range, int threads) {
    Adjacency adj(nodes.size());
    const auto n = static_cast<std::ptrdiff_t>(nodes.size());
#if defined(_OPENMP)
    if (threads <= 0) threads = omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 64) num_threads(threads)
#else
    (void)threads;
#endif
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        fill_row(nodes, range, static_cast<std::size_t>(i), adj[static_cast<std::size_t>(i)]);
    }
    return adj;
}

int default_threads() noexcept {
#if defined(_OPENMP)
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace wacasim::kernels
