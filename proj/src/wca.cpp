#include "wacasim/wca.hpp"

#include <cmath>
#include <limits>

#include "wacasim/errors.hpp"

namespace wacasim {

void WcaConfig::validate() const {
    for (double c : {c_degree, c_distance, c_mobility, c_service_time})
        if (!(c >= 0.0) || !std::isfinite(c)) throw ConfigError("WCA factors must be finite and >= 0");
    if (ideal_degree < 1) throw ConfigError("WCA ideal_degree must be >= 1");
}

double wca_weight(const Topology& t, std::size_t index, const WcaConfig& cfg) {
    const auto& self = t.at(index);
    double dist_sum = 0.0;
    for (auto j : t.adjacent(index)) dist_sum += distance(self.pos, t.at(j).pos);
    const double delta = std::abs(static_cast<double>(t.degree(index)) - cfg.ideal_degree);
    constexpr double speed = 0.0;
    constexpr double service_time = 0.0;
    return cfg.c_degree * delta + cfg.c_distance * dist_sum + cfg.c_mobility * speed +
           cfg.c_service_time * service_time;
}

double wca_weight(const Topology& t, NodeId id, const WcaConfig& cfg) {
    return wca_weight(t, t.index_of(id), cfg);
}

WcaResult wca_elect(const Topology& t, const WcaConfig& cfg) {
    cfg.validate();
    const std::size_t n = t.size();
    WcaResult res;
    res.weights.resize(n);
    res.head_of.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) res.weights[i] = wca_weight(t, i, cfg);

    std::vector<char> covered(n, 0);
    std::size_t remaining = n;
    while (remaining > 0) {
        // Nodes are sorted by id, so the first minimum found is the lowest id.
        std::size_t best = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (covered[i]) continue;
            if (best == n || res.weights[i] < res.weights[best]) best = i;
        }
        const NodeId head = t.at(best).id;
        res.heads.push_back(head);
        covered[best] = 1;
        res.head_of[best] = head;
        --remaining;
        for (auto j : t.adjacent(best)) {
            if (covered[j]) continue;
            covered[j] = 1;
            res.head_of[j] = head;
            --remaining;
        }
    }
    return res;
}

}  // namespace wacasim
