#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wacasim/netmodel.hpp"

namespace wacasim::kernels {

using Adjacency = std::vector<std::vector<std::size_t>>;

/// Reference O(n^2) unit-disk adjacency: j in adj[i] iff i != j and dist < range.
Adjacency adjacency_serial(std::span<const Node> nodes, double range);

/// Same result as adjacency_serial, rows computed in parallel with OpenMP.
Adjacency adjacency_parallel(std::span<const Node> nodes, double range, int threads = 0);

/// Row count above which Topology uses the parallel kernel.
inline constexpr std::size_t kParallelAdjacencyThreshold = 2048;

/// Threads OpenMP would use by default (1 without OpenMP).
int default_threads() noexcept;

}  // namespace wacasim::kernels
