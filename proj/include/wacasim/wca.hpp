#pragma once

#include <vector>

#include "wacasim/netmodel.hpp"

namespace wacasim {

/// Combined-weight factors of the WCA baseline. Lower weight is better.
struct WcaConfig {
    double c_degree = 0.7;
    double c_distance = 0.2;
    double c_mobility = 0.05;
    double c_service_time = 0.05;
    int ideal_degree = 7;

    void validate() const;
};

/// c1 |deg - delta| + c2 sum(dist to neighbors) + c3 speed + c4 service time.
/// Speed and service time are zero for static one-shot elections.
double wca_weight(const Topology& t, std::size_t index, const WcaConfig& cfg);
double wca_weight(const Topology& t, NodeId id, const WcaConfig& cfg);

struct WcaResult {
    std::vector<double> weights;   ///< aligned with t.nodes()
    std::vector<NodeId> head_of;   ///< aligned with t.nodes(); head_of[i] == id for heads
    std::vector<NodeId> heads;     ///< in election order

    std::size_t head_count() const noexcept { return heads.size(); }
};

/// Greedy dominating-set election: repeatedly promote the uncovered node with
/// minimum weight (lowest id on ties) and attach its uncovered neighbors.
WcaResult wca_elect(const Topology& t, const WcaConfig& cfg);

}  // namespace wacasim
