#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wacasim/dissemination.hpp"
#include "wacasim/election.hpp"
#include "wacasim/experiments.hpp"
#include "wacasim/netmodel.hpp"
#include "wacasim/wca.hpp"

namespace wacasim::io {

using Json = nlohmann::ordered_json;

// Topology documents: {side, range, nodes:[{id, x, y, power_ratio, signal}]}.
Json topology_to_json(const Topology& t);
Topology topology_from_json(const Json& j);
/// Parses text; syntax and schema errors raise ParseError with the line number.
Topology parse_topology(std::string_view text);

// Clustering state: {weights:{id:w}, heads:{id:id}, roles:{id:"CH"|"SH"|"SL"}, beacons:n, ...}.
Json state_to_json(const ClusteringState& st);
ClusteringState state_from_json(const Json& j);
ClusteringState parse_state(std::string_view text);

/// WCA result in the same shape as a clustering state (roles CH/SL only).
Json wca_to_json(const Topology& t, const WcaResult& r);

Json report_to_json(const DisseminationReport& r);
/// One JSON object per line: {round, kind, from, to, chunk}; from = -1 is the backbone.
std::string trace_to_jsonl(const std::vector<TraceEvent>& trace);

Json event_to_json(const TopologyEvent& ev);
TopologyEvent event_from_json(const Json& j);
/// Line-delimited events; blank lines and lines starting with '#' are skipped.
std::vector<TopologyEvent> parse_events(std::string_view text);

Json trends_to_json(const TrendReport& r);

Json weight_config_to_json(const WeightConfig& c);
WeightConfig weight_config_from_json(const Json& j, WeightConfig base = {});
Json wca_config_to_json(const WcaConfig& c);
WcaConfig wca_config_from_json(const Json& j, WcaConfig base = {});
Json power_model_to_json(const PowerModel& m);
PowerModel power_model_from_json(const Json& j);
Json signal_model_to_json(const SignalModel& m);
SignalModel signal_model_from_json(const Json& j);
Json sweep_config_to_json(const SweepConfig& c);
SweepConfig sweep_config_from_json(const Json& j, SweepConfig base = {});

/// Undirected adjacency graph, node label = id.
std::string topology_to_dot(const Topology& t);
/// Adjacency plus head edges; clusterheads, sub-heads and slaves colored apart.
std::string state_to_dot(const Topology& t, const ClusteringState& st);
std::string wca_to_dot(const Topology& t, const WcaResult& r);

/// Compact, byte-stable serialization (2-space indent, trailing newline).
std::string dump(const Json& j);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace wacasim::io
