#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <variant>
#include <vector>

#include "wacasim/netmodel.hpp"
#include "wacasim/weights.hpp"

namespace wacasim {

enum class Role { Clusterhead, SubHead, Slave };

const char* role_code(Role r) noexcept;  // "CH" | "SH" | "SL"

/// Marks a node that has not elected anyone yet (cold start, freshly added).
inline constexpr NodeId kNoHead = std::numeric_limits<NodeId>::min();

struct NodeState {
    NodeId id = 0;
    double weight = 0.0;
    NodeId head = kNoHead;
    /// N'(d): neighborhood snapshot taken when d last became a clusterhead.
    /// Present only while d is a clusterhead.
    std::optional<std::vector<NodeId>> prev_neighborhood;
    Role role = Role::Clusterhead;

    bool is_head() const noexcept { return head == id; }
    friend bool operator==(const NodeState&, const NodeState&) = default;
};

/// Per-node election state, sorted by id and aligned with the topology it was
/// computed on.
struct ClusteringState {
    std::vector<NodeState> nodes;
    std::uint64_t beacon_count = 0;
    bool settled = false;
    int rounds = 0;  ///< rounds run by the last settle/apply_event

    const NodeState* find(NodeId id) const noexcept;
    const NodeState& at(NodeId id) const;
    std::size_t count(Role r) const noexcept;
    std::vector<NodeId> clusterheads() const;

    friend bool operator==(const ClusteringState&, const ClusteringState&) = default;
};

inline constexpr int kDefaultMaxRounds = 32;

/// Weights for every node of `t` from the roles and memory held in `prior`.
/// Heads and memory are carried over; nodes absent from `prior` start with kNoHead.
ClusteringState compute_weights(const Topology& t, const ClusteringState& prior, const WeightConfig& cfg);

/// Total weight of `id` under state `st` (ΔN uses st's head and memory for `id`).
double node_weight(NodeId id, const Topology& t, const ClusteringState& st, const WeightConfig& cfg);

/// Head choice for node `index` given the weights in `st`: the strictly heaviest
/// neighbor heavier than the node itself, highest id among equals; else itself.
NodeId choose_head(const Topology& t, const ClusteringState& st, std::size_t index);

/// One synchronous election over all nodes using the weights in `st`. Snapshots
/// or drops N'(d) on role transitions, derives roles, adds n beacons.
ClusteringState elect(const Topology& t, ClusteringState st, const WeightConfig& cfg);

/// Derives Clusterhead/SubHead/Slave from the head pointers.
void derive_roles(ClusteringState& st);

/// Alternates weighting and election from a cold start until no head changes or
/// max_rounds is hit (then `settled` is false).
ClusteringState settle(const Topology& t, const WeightConfig& cfg, int max_rounds = kDefaultMaxRounds);

/// As settle, but starting from `prior` (heads and N' memory). Nodes of `prior`
/// missing from `t` are dropped. This is the from-scratch oracle for apply_event.
ClusteringState settle_from(const Topology& t, const ClusteringState& prior, const WeightConfig& cfg,
                            int max_rounds = kDefaultMaxRounds);

// Topology events.

struct NodeMoved {
    NodeId id;
    Vec2 pos;
};
struct NodeRemoved {
    NodeId id;
};
struct NodeAdded {
    Node node;
};
struct AttributeChanged {
    NodeId id;
    std::optional<double> power_ratio;
    std::optional<double> signal;
};

using TopologyEvent = std::variant<NodeMoved, NodeRemoved, NodeAdded, AttributeChanged>;

Topology apply_to_topology(const Topology& t, const TopologyEvent& ev);

struct EventOutcome {
    Topology topology;
    ClusteringState state;
    std::size_t weights_recomputed = 0;
    std::size_t elections_rerun = 0;
};

/// Incremental update after `ev`. Only nodes whose neighborhood, attributes or
/// role inputs changed are re-weighted and re-elected, round by round. The
/// result equals settle_from(new topology, st). `st` should be settled on `t`;
/// an unsettled state falls back to full recomputation.
EventOutcome apply_event(const ClusteringState& st, const Topology& t, const TopologyEvent& ev,
                         const WeightConfig& cfg, int max_rounds = kDefaultMaxRounds);

/// Random event script for tests and the CLI: moves, removals, additions and
/// attribute changes. New ids start above the current maximum.
std::vector<TopologyEvent> random_events(const Topology& t, std::size_t count, Seed seed);

}  // namespace wacasim
