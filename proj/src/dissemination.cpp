#include "wacasim/dissemination.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "wacasim/errors.hpp"

namespace wacasim {

void ContentJob::validate() const {
    if (chunk_count < 1) throw ConfigError("chunk_count must be >= 1");
    if (uplink_rate < 1 || adhoc_rate < 1) throw ConfigError("uplink and ad-hoc rates must be >= 1");
    if (max_injection_points < 0) throw ConfigError("max_injection_points must be >= 0");
    if (interested.empty()) throw ConfigError("interested set is empty");
}

std::vector<NodeId> select_injection_points(const ClusteringState& st, const Topology& t, const ContentJob& job) {
    const auto label = partition_labels(t);
    std::vector<char> wanted(t.size(), 0);
    for (NodeId id : job.interested)
        if (t.contains(id)) wanted[label[t.index_of(id)]] = 1;

    std::map<std::size_t, std::vector<std::size_t>> by_partition;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const NodeState* s = st.find(t.at(i).id);
        if (s != nullptr && s->is_head() && wanted[label[i]]) by_partition[label[i]].push_back(i);
    }
    std::vector<NodeId> out;
    for (auto& [part, heads] : by_partition) {
        if (job.max_injection_points > 0 && heads.size() > static_cast<std::size_t>(job.max_injection_points)) {
            std::sort(heads.begin(), heads.end(), [&](std::size_t a, std::size_t b) {
                const double wa = st.at(t.at(a).id).weight;
                const double wb = st.at(t.at(b).id).weight;
                return wa != wb ? wa > wb : a > b;
            });
            heads.resize(static_cast<std::size_t>(job.max_injection_points));
        }
        for (auto i : heads) out.push_back(t.at(i).id);
    }
    std::sort(out.begin(), out.end());
    return out;
}

DisseminationReport disseminate(const Topology& t, const ClusteringState& st, const ContentJob& job, Seed seed,
                                std::vector<TraceEvent>* trace) {
    job.validate();
    const std::size_t n = t.size();
    const auto chunks = static_cast<std::size_t>(job.chunk_count);
    DisseminationReport rep;
    rep.injection_points = select_injection_points(st, t, job);

    std::vector<char> is_ip(n, 0);
    for (NodeId id : rep.injection_points) is_ip[t.index_of(id)] = 1;

    // Relays: interested devices, their head chains and the injection points.
    std::vector<char> relay(n, 0);
    std::vector<std::size_t> targets;
    for (NodeId id : job.interested) {
        if (!t.contains(id)) continue;
        std::size_t i = t.index_of(id);
        targets.push_back(i);
        for (std::size_t hops = 0; hops <= n; ++hops) {
            relay[i] = 1;
            const NodeState* s = st.find(t.at(i).id);
            if (s == nullptr || s->is_head() || !t.contains(s->head)) break;
            i = t.index_of(s->head);
        }
    }
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (std::size_t i = 0; i < n; ++i)
        if (is_ip[i] || job.relay_all) relay[i] = 1;

    // Relay-connected groups.
    constexpr auto none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> group(n, none);
    std::size_t groups = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (!relay[s] || group[s] != none) continue;
        std::vector<std::size_t> stack{s};
        group[s] = groups;
        while (!stack.empty()) {
            auto u = stack.back();
            stack.pop_back();
            for (auto v : t.adjacent(u))
                if (relay[v] && group[v] == none) {
                    group[v] = groups;
                    stack.push_back(v);
                }
        }
        ++groups;
    }
    std::vector<std::vector<std::size_t>> group_ips(groups);
    for (std::size_t i = 0; i < n; ++i)
        if (is_ip[i]) group_ips[group[i]].push_back(i);

    std::vector<char> group_wanted(groups, 0);
    for (auto i : targets) group_wanted[group[i]] = 1;
    std::vector<std::deque<int>> queue(n);
    for (std::size_t g = 0; g < groups; ++g) {
        const auto& ips = group_ips[g];
        if (ips.empty() || !group_wanted[g]) continue;
        const std::size_t offset = static_cast<std::size_t>(seed % ips.size());
        for (std::size_t c = 0; c < chunks; ++c) queue[ips[(c + offset) % ips.size()]].push_back(static_cast<int>(c));
    }

    std::vector<std::size_t> reachable;
    for (auto i : targets) {
        if (!group_ips[group[i]].empty())
            reachable.push_back(i);
    }
    std::vector<char> served(n, 0);
    for (auto i : reachable) served[i] = 1;
    for (NodeId id : job.interested)
        if (!t.contains(id) || !served[t.index_of(id)]) rep.unreachable.push_back(id);
    std::sort(rep.unreachable.begin(), rep.unreachable.end());
    rep.unreachable.erase(std::unique(rep.unreachable.begin(), rep.unreachable.end()), rep.unreachable.end());

    std::vector<std::vector<char>> hold(n, std::vector<char>(chunks, 0));
    std::vector<std::size_t> held(n, 0);
    auto all_done = [&] {
        return std::all_of(reachable.begin(), reachable.end(), [&](std::size_t i) { return held[i] == chunks; });
    };

    int round = 0;
    while (!all_done()) {
        ++round;
        bool progress = false;
        for (std::size_t i = 0; i < n; ++i) {
            for (int k = 0; k < job.uplink_rate && !queue[i].empty(); ++k) {
                const int c = queue[i].front();
                queue[i].pop_front();
                ++rep.uplink_transmissions;
                rep.injection_rounds = round;
                progress = true;
                if (!hold[i][static_cast<std::size_t>(c)]) {
                    hold[i][static_cast<std::size_t>(c)] = 1;
                    ++held[i];
                }
                if (trace) trace->push_back({round, TraceEvent::Kind::Inject, -1, t.at(i).id, c});
            }
        }
        const auto snapshot = hold;
        for (std::size_t s = 0; s < n; ++s) {
            if (!relay[s]) continue;
            int budget = job.adhoc_rate;
            for (auto r : t.adjacent(s)) {
                if (budget == 0) break;
                if (!relay[r]) continue;
                for (std::size_t c = 0; c < chunks && budget > 0; ++c) {
                    if (!snapshot[s][c] || hold[r][c]) continue;
                    hold[r][c] = 1;
                    ++held[r];
                    ++rep.adhoc_transmissions;
                    --budget;
                    progress = true;
                    if (trace)
                        trace->push_back({round, TraceEvent::Kind::Forward, t.at(s).id, t.at(r).id, static_cast<int>(c)});
                }
            }
        }
        if (!progress) {
            --round;
            break;
        }
    }
    for (auto i : reachable)
        if (held[i] != chunks) rep.unreachable.push_back(t.at(i).id);
    std::sort(rep.unreachable.begin(), rep.unreachable.end());
    rep.rounds = round;
    rep.complete = rep.unreachable.empty();
    return rep;
}

}  // namespace wacasim
