#pragma once

#include <optional>
#include <span>
#include <vector>

#include "wacasim/netmodel.hpp"

namespace wacasim {

/// Weighing factors and guards of the WACA weight function.
struct WeightConfig {
    double wf_power = 0.9;       ///< power appropriateness P_A
    double wf_signal = 1.0;      ///< backbone signal s
    double wf_clustering = 0.85; ///< local clustering coefficient c_L
    double wf_degree = 0.65;     ///< dissemination degree term
    double wf_stability = 0.6;   ///< stability coefficient
    int ideal_degree = 7;
    double log_base = 10.0;
    double pa_floor = 0.0;       ///< returned when P(d) <= 3/5 and as a lower clamp

    void validate() const;
};

/// The five weight terms of one device, kept for export and tests.
struct WeightTerms {
    double power = 0.0;
    double signal = 0.0;
    double clustering = 0.0;
    double degree = 0.0;
    double stability = 0.0;
};

/// 3/2 + 1/2 log(p - 3/5), floored at cfg.pa_floor; cfg.pa_floor for p <= 3/5.
double power_appropriateness(double power_ratio, const WeightConfig& cfg);

/// 1 - |deg - dd_I| / dd_I. Unclamped, negative for deg > 2 dd_I.
double degree_term(std::size_t degree, const WeightConfig& cfg);

/// 1 - |prev xor curr| / (|prev| + |curr|) for a sitting clusterhead, 0 otherwise.
/// Both inputs must be sorted ascending. Two empty sets give 1.
double stability_term(const std::optional<std::vector<NodeId>>& prev, std::span<const NodeId> curr,
                      bool is_current_head);

WeightTerms weight_terms(const Topology& t, std::size_t index, bool is_current_head,
                         const std::optional<std::vector<NodeId>>& prev_neighborhood,
                         const WeightConfig& cfg);

double combine(const WeightTerms& terms, const WeightConfig& cfg) noexcept;

/// Total weight of the node at `index`.
double node_weight(const Topology& t, std::size_t index, bool is_current_head,
                   const std::optional<std::vector<NodeId>>& prev_neighborhood, const WeightConfig& cfg);

}  // namespace wacasim
