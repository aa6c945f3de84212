#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wacasim/election.hpp"
#include "wacasim/netmodel.hpp"

namespace wacasim {

struct ContentJob {
    int chunk_count = 1;
    std::vector<NodeId> interested;
    int uplink_rate = 1;  ///< chunks per injection point per round
    int adhoc_rate = 1;   ///< (chunk, neighbor) transmissions per device per round
    /// Per-partition cap on injection points, heaviest first. 0 keeps all.
    int max_injection_points = 0;
    /// Let every device relay instead of interested devices and head chains only.
    bool relay_all = false;

    void validate() const;
};

struct DisseminationReport {
    int rounds = 0;            ///< rounds until every reachable interested device holds every chunk
    int injection_rounds = 0;  ///< last round in which the backbone pushed a chunk
    std::uint64_t uplink_transmissions = 0;
    std::uint64_t adhoc_transmissions = 0;
    std::vector<NodeId> injection_points;
    std::vector<NodeId> unreachable;  ///< interested ids that cannot be served
    bool complete = false;            ///< true when unreachable is empty
};

struct TraceEvent {
    enum class Kind { Inject, Forward };

    int round = 0;
    Kind kind = Kind::Forward;
    NodeId from = -1;  ///< -1 denotes the backbone
    NodeId to = 0;
    int chunk = 0;
};

/// Full clusterheads whose partition holds at least one interested device,
/// ascending by id. With job.max_injection_points > 0 only the heaviest
/// clusterheads of each partition are kept (higher id on equal weight).
std::vector<NodeId> select_injection_points(const ClusteringState& st, const Topology& t, const ContentJob& job);

/// Synchronous round simulation. Each round the backbone first pushes up to
/// uplink_rate pending chunks to every injection point, then every relay sends
/// up to adhoc_rate chunks it held after injection to relay neighbors missing
/// them, scanning (sender id, receiver id, chunk) in ascending order.
///
/// Injection points that can exchange chunks over relays form a group; chunks
/// are dealt round-robin over the injection points of each group, starting at
/// offset `seed mod group size`.
DisseminationReport disseminate(const Topology& t, const ClusteringState& st, const ContentJob& job, Seed seed,
                                std::vector<TraceEvent>* trace = nullptr);

}  // namespace wacasim
