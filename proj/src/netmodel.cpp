#include "wacasim/netmodel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "wacasim/errors.hpp"
#include "wacasim/kernels.hpp"

namespace wacasim {

double distance(const Vec2& a, const Vec2& b) noexcept {
    return std::hypot(a.x - b.x, a.y - b.y);
}

Topology::Topology(std::vector<Node> nodes, double range, double side)
    : nodes_(std::move(nodes)), range_(range), side_(side) {
    if (!(range_ > 0.0) || !std::isfinite(range_)) throw ConfigError("range must be a positive finite number");
    if (!(side_ > 0.0)) throw ConfigError("side must be positive");
    std::sort(nodes_.begin(), nodes_.end(), [](const Node& a, const Node& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Node& nd = nodes_[i];
        if (i > 0 && nodes_[i - 1].id == nd.id) throw ConfigError("duplicate node id " + std::to_string(nd.id));
        if (!(nd.signal >= 0.0 && nd.signal <= 1.0))
            throw ConfigError("node " + std::to_string(nd.id) + ": signal must lie in [0,1]");
        if (!(nd.power_ratio >= 0.0) || !std::isfinite(nd.power_ratio))
            throw ConfigError("node " + std::to_string(nd.id) + ": power_ratio must be >= 0");
        if (!std::isfinite(nd.pos.x) || !std::isfinite(nd.pos.y))
            throw ConfigError("node " + std::to_string(nd.id) + ": non-finite position");
    }
    rebuild_adjacency();
}

void Topology::rebuild_adjacency() {
    adjacency_ = nodes_.size() >= kernels::kParallelAdjacencyThreshold
                     ? kernels::adjacency_parallel(nodes_, range_)
                     : kernels::adjacency_serial(nodes_, range_);
    neighbor_ids_.assign(nodes_.size(), {});
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        auto& ids = neighbor_ids_[i];
        ids.reserve(adjacency_[i].size());
        for (auto j : adjacency_[i]) ids.push_back(nodes_[j].id);
    }
}

bool Topology::contains(NodeId id) const noexcept {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id,
                               [](const Node& n, NodeId v) { return n.id < v; });
    return it != nodes_.end() && it->id == id;
}

std::size_t Topology::index_of(NodeId id) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id,
                               [](const Node& n, NodeId v) { return n.id < v; });
    if (it == nodes_.end() || it->id != id) throw LookupError("unknown node id " + std::to_string(id));
    return static_cast<std::size_t>(it - nodes_.begin());
}

bool Topology::linked(std::size_t a, std::size_t b) const noexcept {
    const auto& row = adjacency_[a];
    return std::binary_search(row.begin(), row.end(), b);
}

std::size_t Topology::edge_count() const noexcept {
    std::size_t twice = 0;
    for (const auto& row : adjacency_) twice += row.size();
    return twice / 2;
}

Topology Topology::with_range(double range) const { return Topology(nodes_, range, side_); }

Topology Topology::with_node_moved(NodeId id, Vec2 pos) const {
    auto nodes = nodes_;
    nodes[index_of(id)].pos = pos;
    return Topology(std::move(nodes), range_, side_);
}

Topology Topology::without_node(NodeId id) const {
    auto nodes = nodes_;
    nodes.erase(nodes.begin() + static_cast<std::ptrdiff_t>(index_of(id)));
    return Topology(std::move(nodes), range_, side_);
}

Topology Topology::with_node_added(const Node& node) const {
    if (contains(node.id)) throw ConfigError("node id " + std::to_string(node.id) + " already present");
    auto nodes = nodes_;
    nodes.push_back(node);
    return Topology(std::move(nodes), range_, side_);
}

Topology Topology::with_attributes(NodeId id, std::optional<double> power_ratio,
                                   std::optional<double> signal) const {
    auto nodes = nodes_;
    Node& nd = nodes[index_of(id)];
    if (power_ratio) nd.power_ratio = *power_ratio;
    if (signal) nd.signal = *signal;
    return Topology(std::move(nodes), range_, side_);
}

Topology deploy_uniform(std::size_t n, double side, Seed seed, double range) {
    if (n < 1) throw ConfigError("deploy_uniform: n must be >= 1");
    if (!(side > 0.0) || !std::isfinite(side)) throw ConfigError("deploy_uniform: side must be positive");
    Rng rng(seed);
    std::vector<Node> nodes(n);
    for (std::size_t i = 0; i < n; ++i) {
        nodes[i].id = static_cast<NodeId>(i);
        nodes[i].pos.x = side * rng.uniform01();
        nodes[i].pos.y = side * rng.uniform01();
    }
    return Topology(std::move(nodes), range, side);
}

double local_clustering_coefficient_at(const Topology& t, std::size_t index) {
    const auto nbrs = t.adjacent(index);
    const std::size_t k = nbrs.size();
    if (k < 2) return 0.0;
    std::size_t links = 0;
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b)
            if (t.linked(nbrs[a], nbrs[b])) ++links;
    return static_cast<double>(links) / (static_cast<double>(k) * static_cast<double>(k - 1) / 2.0);
}

double local_clustering_coefficient(const Topology& t, NodeId id) {
    return local_clustering_coefficient_at(t, t.index_of(id));
}

std::vector<std::size_t> partition_labels(const Topology& t) {
    constexpr auto unset = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> label(t.size(), unset);
    std::vector<std::size_t> stack;
    std::size_t next = 0;
    for (std::size_t s = 0; s < t.size(); ++s) {
        if (label[s] != unset) continue;
        label[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            auto u = stack.back();
            stack.pop_back();
            for (auto v : t.adjacent(u)) {
                if (label[v] == unset) {
                    label[v] = next;
                    stack.push_back(v);
                }
            }
        }
        ++next;
    }
    return label;
}

std::vector<std::vector<NodeId>> partitions(const Topology& t) {
    const auto label = partition_labels(t);
    std::size_t count = 0;
    for (auto l : label) count = std::max(count, l + 1);
    std::vector<std::vector<NodeId>> parts(count);
    for (std::size_t i = 0; i < t.size(); ++i) parts[label[i]].push_back(t.at(i).id);
    return parts;
}

void SignalModel::validate() const {
    switch (kind) {
    case Kind::Constant:
        if (!(value >= 0.0 && value <= 1.0)) throw ConfigError("constant signal must lie in [0,1]");
        break;
    case Kind::UniformRandom:
        break;
    case Kind::BaseStations:
        if (!(station_range > 0.0)) throw ConfigError("base-station range must be positive");
        break;
    }
}

void PowerModel::validate() const {
    switch (kind) {
    case Kind::Constant:
        if (!(value >= 0.0) || !std::isfinite(value)) throw ConfigError("constant power ratio must be >= 0");
        break;
    case Kind::Uniform:
        if (!(lo >= 0.0 && hi >= lo) || !std::isfinite(hi))
            throw ConfigError("uniform power ratio needs 0 <= lo <= hi");
        break;
    }
}

Topology assign_signal(const Topology& t, const SignalModel& model, Seed seed) {
    model.validate();
    std::vector<Node> nodes(t.nodes().begin(), t.nodes().end());
    Rng rng(seed);
    for (auto& nd : nodes) {
        switch (model.kind) {
        case SignalModel::Kind::Constant:
            nd.signal = model.value;
            break;
        case SignalModel::Kind::UniformRandom:
            nd.signal = rng.uniform01();
            break;
        case SignalModel::Kind::BaseStations: {
            double best = 0.0;
            for (const auto& st : model.stations)
                best = std::max(best, std::max(0.0, 1.0 - distance(nd.pos, st) / model.station_range));
            nd.signal = std::clamp(best, 0.0, 1.0);
            break;
        }
        }
    }
    return Topology(std::move(nodes), t.range(), t.side());
}

Topology assign_power(const Topology& t, const PowerModel& model, Seed seed) {
    model.validate();
    std::vector<Node> nodes(t.nodes().begin(), t.nodes().end());
    Rng rng(seed);
    for (auto& nd : nodes) {
        nd.power_ratio = model.kind == PowerModel::Kind::Constant ? model.value : rng.uniform(model.lo, model.hi);
    }
    return Topology(std::move(nodes), t.range(), t.side());
}

double min_pairwise_distance(const Topology& t) {
    double best = std::numeric_limits<double>::infinity();
    const auto nodes = t.nodes();
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j) best = std::min(best, distance(nodes[i].pos, nodes[j].pos));
    return best;
}

}  // namespace wacasim
