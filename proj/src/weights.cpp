#include "wacasim/weights.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "wacasim/errors.hpp"

namespace wacasim {

void WeightConfig::validate() const {
    for (double f : {wf_power, wf_signal, wf_clustering, wf_degree, wf_stability}) {
        if (!(f >= 0.0) || !std::isfinite(f)) throw ConfigError("weighing factors must be finite and >= 0");
    }
    if (ideal_degree < 1) throw ConfigError("ideal_degree must be >= 1");
    if (!(log_base > 1.0) || !std::isfinite(log_base)) throw ConfigError("log_base must be > 1");
    if (!std::isfinite(pa_floor)) throw ConfigError("pa_floor must be finite");
}

double power_appropriateness(double power_ratio, const WeightConfig& cfg) {
    constexpr double threshold = 3.0 / 5.0;
    if (!(power_ratio > threshold)) return cfg.pa_floor;
    const double pa = 1.5 + 0.5 * (std::log(power_ratio - threshold) / std::log(cfg.log_base));
    return std::max(pa, cfg.pa_floor);
}

double degree_term(std::size_t degree, const WeightConfig& cfg) {
    const double ideal = cfg.ideal_degree;
    return 1.0 - std::abs(static_cast<double>(degree) - ideal) / ideal;
}

double stability_term(const std::optional<std::vector<NodeId>>& prev, std::span<const NodeId> curr,
                      bool is_current_head) {
    if (!is_current_head || !prev) return 0.0;
    const std::size_t total = prev->size() + curr.size();
    if (total == 0) return 1.0;
    // |A xor B| = |A| + |B| - 2|A and B| on sorted ranges.
    std::size_t common = 0;
    auto a = prev->begin();
    auto b = curr.begin();
    while (a != prev->end() && b != curr.end()) {
        if (*a < *b) {
            ++a;
        } else if (*b < *a) {
            ++b;
        } else {
            ++common;
            ++a;
            ++b;
        }
    }
    const std::size_t sym = total - 2 * common;
    return 1.0 - static_cast<double>(sym) / static_cast<double>(total);
}

WeightTerms weight_terms(const Topology& t, std::size_t index, bool is_current_head,
                         const std::optional<std::vector<NodeId>>& prev_neighborhood,
                         const WeightConfig& cfg) {
    const Node& nd = t.at(index);
    WeightTerms w;
    w.power = power_appropriateness(nd.power_ratio, cfg);
    w.signal = nd.signal;
    w.clustering = local_clustering_coefficient_at(t, index);
    w.degree = degree_term(t.degree(index), cfg);
    w.stability = stability_term(prev_neighborhood, t.neighbors(nd.id), is_current_head);
    return w;
}

double combine(const WeightTerms& w, const WeightConfig& cfg) noexcept {
    return cfg.wf_power * w.power + cfg.wf_signal * w.signal + cfg.wf_clustering * w.clustering +
           cfg.wf_degree * w.degree + cfg.wf_stability * w.stability;
}

double node_weight(const Topology& t, std::size_t index, bool is_current_head,
                   const std::optional<std::vector<NodeId>>& prev_neighborhood, const WeightConfig& cfg) {
    return combine(weight_terms(t, index, is_current_head, prev_neighborhood, cfg), cfg);
}

}  // namespace wacasim
