#include "wacasim/election.hpp"

#include <algorithm>
#include <string>

#include "wacasim/errors.hpp"

namespace wacasim {

const char* role_code(Role r) noexcept {
    switch (r) {
    case Role::Clusterhead: return "CH";
    case Role::SubHead: return "SH";
    case Role::Slave: return "SL";
    }
    return "?";
}

const NodeState* ClusteringState::find(NodeId id) const noexcept {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), id,
                               [](const NodeState& s, NodeId v) { return s.id < v; });
    return it != nodes.end() && it->id == id ? &*it : nullptr;
}

const NodeState& ClusteringState::at(NodeId id) const {
    if (const auto* s = find(id)) return *s;
    throw LookupError("no clustering state for node " + std::to_string(id));
}

std::size_t ClusteringState::count(Role r) const noexcept {
    return static_cast<std::size_t>(
        std::count_if(nodes.begin(), nodes.end(), [r](const NodeState& s) { return s.role == r; }));
}

std::vector<NodeId> ClusteringState::clusterheads() const {
    std::vector<NodeId> out;
    for (const auto& s : nodes)
        if (s.is_head()) out.push_back(s.id);
    return out;
}

ClusteringState compute_weights(const Topology& t, const ClusteringState& prior, const WeightConfig& cfg) {
    ClusteringState st;
    st.beacon_count = prior.beacon_count;
    st.rounds = prior.rounds;
    st.nodes.resize(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        NodeState& s = st.nodes[i];
        s.id = t.at(i).id;
        if (const NodeState* p = prior.find(s.id)) {
            s.head = p->head;
            s.prev_neighborhood = p->prev_neighborhood;
            s.role = p->role;
        }
        s.weight = node_weight(t, i, s.head == s.id, s.prev_neighborhood, cfg);
    }
    return st;
}

double node_weight(NodeId id, const Topology& t, const ClusteringState& st, const WeightConfig& cfg) {
    const std::size_t i = t.index_of(id);
    const NodeState* s = st.find(id);
    if (s == nullptr) return node_weight(t, i, false, std::nullopt, cfg);
    return node_weight(t, i, s->head == id, s->prev_neighborhood, cfg);
}

NodeId choose_head(const Topology& t, const ClusteringState& st, std::size_t index) {
    std::size_t best = index;
    for (auto j : t.adjacent(index)) {
        const double wj = st.nodes[j].weight;
        const double wb = st.nodes[best].weight;
        if (wj > wb || (best != index && wj == wb && st.nodes[j].id > st.nodes[best].id)) best = j;
    }
    return st.nodes[best].id;
}

namespace {

// Applies a fresh head choice, maintaining the N' memory. Returns true if the head changed.
bool assign_head(const Topology& t, NodeState& s, NodeId head) {
    const NodeId old = s.head;
    if (head == s.id) {
        if (old != s.id || !s.prev_neighborhood) {
            const auto nb = t.neighbors(s.id);
            s.prev_neighborhood.emplace(nb.begin(), nb.end());
        }
    } else {
        s.prev_neighborhood.reset();
    }
    s.head = head;
    return old != head;
}

}  // namespace

void derive_roles(ClusteringState& st) {
    std::vector<bool> elected(st.nodes.size(), false);
    for (const auto& s : st.nodes) {
        if (s.head == s.id) continue;
        auto it = std::lower_bound(st.nodes.begin(), st.nodes.end(), s.head,
                                   [](const NodeState& a, NodeId v) { return a.id < v; });
        if (it != st.nodes.end() && it->id == s.head) elected[static_cast<std::size_t>(it - st.nodes.begin())] = true;
    }
    for (std::size_t i = 0; i < st.nodes.size(); ++i) {
        auto& s = st.nodes[i];
        s.role = s.head == s.id ? Role::Clusterhead : (elected[i] ? Role::SubHead : Role::Slave);
    }
}

ClusteringState elect(const Topology& t, ClusteringState st, const WeightConfig& /*cfg*/) {
    std::vector<NodeId> heads(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) heads[i] = choose_head(t, st, i);
    for (std::size_t i = 0; i < t.size(); ++i) assign_head(t, st.nodes[i], heads[i]);
    derive_roles(st);
    st.beacon_count += t.size();
    return st;
}

ClusteringState settle_from(const Topology& t, const ClusteringState& prior, const WeightConfig& cfg,
                            int max_rounds) {
    if (max_rounds < 1) throw ConfigError("max_rounds must be >= 1");
    cfg.validate();
    ClusteringState state = prior;
    for (int r = 1; r <= max_rounds; ++r) {
        ClusteringState next = elect(t, compute_weights(t, state, cfg), cfg);
        bool changed = false;
        for (const auto& s : next.nodes) {
            const NodeState* p = state.find(s.id);
            if (p == nullptr || p->head != s.head) {
                changed = true;
                break;
            }
        }
        state = std::move(next);
        state.rounds = r;
        if (!changed) {
            state.settled = true;
            return state;
        }
    }
    state.settled = false;
    return state;
}

ClusteringState settle(const Topology& t, const WeightConfig& cfg, int max_rounds) {
    return settle_from(t, ClusteringState{}, cfg, max_rounds);
}

Topology apply_to_topology(const Topology& t, const TopologyEvent& ev) {
    return std::visit(
        [&t](const auto& e) -> Topology {
            using E = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<E, NodeMoved>) {
                return t.with_node_moved(e.id, e.pos);
            } else if constexpr (std::is_same_v<E, NodeRemoved>) {
                return t.without_node(e.id);
            } else if constexpr (std::is_same_v<E, NodeAdded>) {
                return t.with_node_added(e.node);
            } else {
                return t.with_attributes(e.id, e.power_ratio, e.signal);
            }
        },
        ev);
}

namespace {

std::optional<NodeId> event_subject(const TopologyEvent& ev) {
    return std::visit(
        [](const auto& e) -> std::optional<NodeId> {
            using E = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<E, NodeRemoved>) {
                return std::nullopt;
            } else if constexpr (std::is_same_v<E, NodeAdded>) {
                return e.node.id;
            } else {
                return e.id;
            }
        },
        ev);
}

void mark_closed_neighborhood(const Topology& t, std::size_t i, std::vector<char>& mark) {
    mark[i] = 1;
    for (auto j : t.adjacent(i)) mark[j] = 1;
}

}  // namespace

EventOutcome apply_event(const ClusteringState& st, const Topology& t, const TopologyEvent& ev,
                         const WeightConfig& cfg, int max_rounds) {
    if (max_rounds < 1) throw ConfigError("max_rounds must be >= 1");
    cfg.validate();
    EventOutcome out;
    out.topology = apply_to_topology(t, ev);
    const Topology& nt = out.topology;
    const std::size_t n = nt.size();

    bool aligned = st.settled && st.nodes.size() == t.size();
    for (std::size_t i = 0; aligned && i < t.size(); ++i) aligned = st.nodes[i].id == t.at(i).id;
    if (!aligned) {
        out.state = settle_from(nt, st, cfg, max_rounds);
        out.weights_recomputed = n * static_cast<std::size_t>(out.state.rounds);
        out.elections_rerun = out.weights_recomputed;
        return out;
    }

    ClusteringState& cur = out.state;
    cur.beacon_count = st.beacon_count;
    cur.nodes.resize(n);
    std::vector<char> fresh(n, 0);
    std::vector<char> touched(n, 0);
    const auto subject = event_subject(ev);
    for (std::size_t i = 0; i < n; ++i) {
        const NodeId id = nt.at(i).id;
        if (const NodeState* p = st.find(id)) {
            cur.nodes[i] = *p;
            const auto before = t.neighbors(id);
            const auto after = nt.adjacent(i);
            if (before.size() != after.size() ||
                !std::equal(before.begin(), before.end(), nt.neighbors(id).begin()))
                touched[i] = 1;
        } else {
            cur.nodes[i] = NodeState{id, 0.0, kNoHead, std::nullopt, Role::Slave};
            fresh[i] = 1;
            touched[i] = 1;
        }
        if (subject && *subject == id) touched[i] = 1;
    }

    // Round 1 re-weights the touched nodes and everyone adjacent to them
    // (their clustering coefficient may have changed). Later rounds re-weight
    // only nodes whose clusterhead status flipped.
    std::vector<char> reweigh(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        if (touched[i]) mark_closed_neighborhood(nt, i, reweigh);

    for (int r = 1; r <= max_rounds; ++r) {
        std::vector<char> reelect(n, 0);
        if (r == 1) reelect = touched;
        std::vector<double> weights(n);
        for (std::size_t i = 0; i < n; ++i) {
            weights[i] = cur.nodes[i].weight;
            if (!reweigh[i]) continue;
            const NodeState& s = cur.nodes[i];
            weights[i] = node_weight(nt, i, s.head == s.id, s.prev_neighborhood, cfg);
            ++out.weights_recomputed;
            if (fresh[i] || weights[i] != s.weight) mark_closed_neighborhood(nt, i, reelect);
        }
        for (std::size_t i = 0; i < n; ++i) cur.nodes[i].weight = weights[i];
        std::fill(fresh.begin(), fresh.end(), 0);

        std::vector<NodeId> heads(n);
        for (std::size_t i = 0; i < n; ++i)
            if (reelect[i]) heads[i] = choose_head(nt, cur, i);

        bool changed = false;
        std::fill(reweigh.begin(), reweigh.end(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (!reelect[i]) continue;
            ++out.elections_rerun;
            NodeState& s = cur.nodes[i];
            const bool was_head = s.head == s.id;
            if (assign_head(nt, s, heads[i])) changed = true;
            if (was_head != (s.head == s.id)) reweigh[i] = 1;
        }
        derive_roles(cur);
        cur.beacon_count += n;
        cur.rounds = r;
        if (!changed) {
            cur.settled = true;
            return out;
        }
    }
    cur.settled = false;
    return out;
}

std::vector<TopologyEvent> random_events(const Topology& t, std::size_t count, Seed seed) {
    Rng rng(seed);
    Topology cur = t;
    NodeId next_id = 0;
    for (const auto& nd : t.nodes()) next_id = std::max(next_id, nd.id + 1);
    std::vector<TopologyEvent> events;
    events.reserve(count);
    auto pick = [&]() { return cur.at(static_cast<std::size_t>(rng.below(cur.size()))).id; };
    for (std::size_t k = 0; k < count; ++k) {
        const double u = rng.uniform01();
        TopologyEvent ev;
        if (cur.empty() || u < 0.2) {
            Node nd;
            nd.id = next_id++;
            nd.pos = {cur.side() * rng.uniform01(), cur.side() * rng.uniform01()};
            nd.power_ratio = rng.uniform(0.7, 4.0);
            nd.signal = rng.uniform01();
            ev = NodeAdded{nd};
        } else if (u < 0.6) {
            ev = NodeMoved{pick(), {cur.side() * rng.uniform01(), cur.side() * rng.uniform01()}};
        } else if (u < 0.75 && cur.size() > 1) {
            ev = NodeRemoved{pick()};
        } else {
            AttributeChanged a{pick(), std::nullopt, std::nullopt};
            const double v = rng.uniform01();
            if (v < 0.4) {
                a.power_ratio = rng.uniform(0.0, 4.0);
            } else if (v < 0.8) {
                a.signal = rng.uniform01();
            } else {
                a.power_ratio = rng.uniform(0.0, 4.0);
                a.signal = rng.uniform01();
            }
            ev = a;
        }
        cur = apply_to_topology(cur, ev);
        events.push_back(std::move(ev));
    }
    return events;
}

}  // namespace wacasim
