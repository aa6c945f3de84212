#pragma once

// Test-only reference computations. Everything here works from raw node
// coordinates and attributes and does not call into the library's adjacency,
// weight or election code.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "wacasim/netmodel.hpp"
#include "wacasim/weights.hpp"

namespace oracle {

using wacasim::Node;
using wacasim::NodeId;

inline double dist(const Node& a, const Node& b) {
    const double dx = a.pos.x - b.pos.x, dy = a.pos.y - b.pos.y;
    return std::sqrt(dx * dx + dy * dy);
}

inline std::vector<std::size_t> neighbors(const std::vector<Node>& nodes, double range, std::size_t i) {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < nodes.size(); ++j)
        if (j != i && dist(nodes[i], nodes[j]) < range) out.push_back(j);
    return out;
}

inline std::set<NodeId> neighbor_ids(const std::vector<Node>& nodes, double range, std::size_t i) {
    std::set<NodeId> out;
    for (auto j : neighbors(nodes, range, i)) out.insert(nodes[j].id);
    return out;
}

inline double clustering(const std::vector<Node>& nodes, double range, std::size_t i) {
    const auto nb = neighbors(nodes, range, i);
    if (nb.size() < 2) return 0.0;
    double links = 0;
    for (auto a : nb)
        for (auto b : nb)
            if (a < b && dist(nodes[a], nodes[b]) < range) links += 1;
    const double k = static_cast<double>(nb.size());
    return links / (k * (k - 1) / 2);
}

inline double power_term(double p, const wacasim::WeightConfig& cfg) {
    if (p <= 0.6) return cfg.pa_floor;
    const double lg = cfg.log_base == 10.0 ? std::log10(p - 0.6) : std::log2(p - 0.6) / std::log2(cfg.log_base);
    return std::max(cfg.pa_floor, 1.5 + lg / 2);
}

inline double degree_term(double k, double ideal) { return 1 - std::fabs(k - ideal) / ideal; }

inline double stability(const std::set<NodeId>* prev, const std::set<NodeId>& curr, bool head) {
    if (!head || prev == nullptr) return 0.0;
    std::vector<NodeId> sym;
    std::set_symmetric_difference(prev->begin(), prev->end(), curr.begin(), curr.end(), std::back_inserter(sym));
    const double denom = static_cast<double>(prev->size() + curr.size());
    return denom == 0 ? 1.0 : 1 - static_cast<double>(sym.size()) / denom;
}

inline double weight(const std::vector<Node>& nodes, double range, std::size_t i, const wacasim::WeightConfig& cfg,
                     bool head = false, const std::set<NodeId>* prev = nullptr) {
    const auto nb = neighbor_ids(nodes, range, i);
    return cfg.wf_power * power_term(nodes[i].power_ratio, cfg) + cfg.wf_signal * nodes[i].signal +
           cfg.wf_clustering * clustering(nodes, range, i) +
           cfg.wf_degree * degree_term(static_cast<double>(nb.size()), cfg.ideal_degree) +
           cfg.wf_stability * stability(prev, nb, head);
}

inline double rel_err(double got, double want) {
    const double scale = std::max(1.0, std::fabs(want));
    return std::fabs(got - want) / scale;
}

/// Connected components by union-find over raw distances; returns a label per index.
inline std::vector<std::size_t> components(const std::vector<Node>& nodes, double range) {
    std::vector<std::size_t> parent(nodes.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j)
            if (dist(nodes[i], nodes[j]) < range) parent[find(i)] = find(j);
    std::vector<std::size_t> label(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) label[i] = find(i);
    return label;
}

}  // namespace oracle
