#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wacasim/rng.hpp"

namespace wacasim {

using NodeId = std::int64_t;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Vec2&, const Vec2&) = default;
};

double distance(const Vec2& a, const Vec2& b) noexcept;

/// A device. `power_ratio` is available power over the power the injection-point
/// job needs; `signal` is backbone signal strength in [0,1].
struct Node {
    NodeId id = 0;
    Vec2 pos;
    double power_ratio = 1.0;
    double signal = 0.0;

    friend bool operator==(const Node&, const Node&) = default;
};

/// Immutable node set plus transmission range. Nodes are kept sorted by id and
/// the unit-disk adjacency (dist < range, strict) is computed on construction.
class Topology {
public:
    Topology() = default;
    Topology(std::vector<Node> nodes, double range, double side = 100.0);

    std::size_t size() const noexcept { return nodes_.size(); }
    bool empty() const noexcept { return nodes_.empty(); }
    double range() const noexcept { return range_; }
    double side() const noexcept { return side_; }
    std::span<const Node> nodes() const noexcept { return nodes_; }

    bool contains(NodeId id) const noexcept;
    /// Position of `id` in nodes(). Throws LookupError.
    std::size_t index_of(NodeId id) const;
    const Node& node(NodeId id) const { return nodes_[index_of(id)]; }
    const Node& at(std::size_t index) const { return nodes_[index]; }

    /// Neighbor ids of `id`, ascending. Throws LookupError.
    std::span<const NodeId> neighbors(NodeId id) const { return neighbor_ids_[index_of(id)]; }
    /// Neighbor indices of node at `index`, ascending.
    std::span<const std::size_t> adjacent(std::size_t index) const noexcept { return adjacency_[index]; }
    std::size_t degree(std::size_t index) const noexcept { return adjacency_[index].size(); }
    bool linked(std::size_t a, std::size_t b) const noexcept;
    std::size_t edge_count() const noexcept;

    Topology with_range(double range) const;
    Topology with_node_moved(NodeId id, Vec2 pos) const;
    Topology without_node(NodeId id) const;
    Topology with_node_added(const Node& node) const;
    Topology with_attributes(NodeId id, std::optional<double> power_ratio,
                             std::optional<double> signal) const;

private:
    void rebuild_adjacency();

    std::vector<Node> nodes_;
    double range_ = 1.0;
    double side_ = 100.0;
    std::vector<std::vector<std::size_t>> adjacency_;
    std::vector<std::vector<NodeId>> neighbor_ids_;
};

/// n nodes with i.i.d. uniform positions in [0, side)^2, ids 0..n-1.
/// The returned topology has the given range (default: tiny, i.e. no links).
Topology deploy_uniform(std::size_t n, double side, Seed seed, double range = 1e-9);

/// Watts-Strogatz local clustering coefficient: links among N(d) over k(k-1)/2.
/// Zero when k < 2.
double local_clustering_coefficient(const Topology& t, NodeId id);
double local_clustering_coefficient_at(const Topology& t, std::size_t index);

/// Connected components, each sorted ascending, ordered by smallest member.
std::vector<std::vector<NodeId>> partitions(const Topology& t);
/// Component label per node index, labels in order of first appearance.
std::vector<std::size_t> partition_labels(const Topology& t);

struct BaseStation {
    Vec2 pos;
};

struct SignalModel {
    enum class Kind { Constant, UniformRandom, BaseStations };

    Kind kind = Kind::UniformRandom;
    double value = 1.0;
    std::vector<Vec2> stations;
    double station_range = 50.0;

    static SignalModel constant(double v) { return {Kind::Constant, v, {}, 0.0}; }
    static SignalModel uniform() { return {}; }
    static SignalModel base_stations(std::vector<Vec2> stations, double range) {
        return {Kind::BaseStations, 0.0, std::move(stations), range};
    }

    void validate() const;
};

/// Generator for the power ratio P(d).
struct PowerModel {
    enum class Kind { Constant, Uniform };

    Kind kind = Kind::Uniform;
    double value = 1.0;
    double lo = 0.7;
    double hi = 4.0;

    static PowerModel constant(double v) { return {Kind::Constant, v, 0.0, 0.0}; }
    static PowerModel uniform(double lo, double hi) { return {Kind::Uniform, 0.0, lo, hi}; }

    void validate() const;
};

Topology assign_signal(const Topology& t, const SignalModel& model, Seed seed);
Topology assign_power(const Topology& t, const PowerModel& model, Seed seed);

/// Smallest distance over all node pairs; +inf for fewer than two nodes.
double min_pairwise_distance(const Topology& t);

}  // namespace wacasim
