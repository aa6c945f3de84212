#include "wacasim/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "wacasim/errors.hpp"

namespace wacasim::io {

namespace {

int line_of(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

Json parse_json(std::string_view text, int line_offset = 0) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        const int line = line_offset > 0 ? line_offset : line_of(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError(e.what(), line);
    }
}

template <typename T>
T field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("field '") + key + "': " + e.what());
    }
}

template <typename T>
T field_or(const Json& j, const char* key, T fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    return field<T>(j, key);
}

/// Config objects reject unknown keys so typos do not silently fall back to defaults.
void require_known_keys(const Json& j, std::initializer_list<const char*> keys, const char* what) {
    if (!j.is_object()) throw ParseError(std::string(what) + " must be an object");
    for (const auto& [k, v] : j.items()) {
        if (std::none_of(keys.begin(), keys.end(), [&](const char* known) { return k == known; }))
            throw ConfigError(std::string("unknown ") + what + " key '" + k + "'");
    }
}

NodeId parse_id_key(const std::string& key) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(key, &used);
        if (used != key.size()) throw ParseError("bad node id key '" + key + "'");
        return static_cast<NodeId>(v);
    } catch (const std::logic_error&) {
        throw ParseError("bad node id key '" + key + "'");
    }
}

Role parse_role(const std::string& code) {
    if (code == "CH") return Role::Clusterhead;
    if (code == "SH") return Role::SubHead;
    if (code == "SL") return Role::Slave;
    throw ParseError("unknown role '" + code + "'");
}

}  // namespace

Json topology_to_json(const Topology& t) {
    Json nodes = Json::array();
    for (const auto& nd : t.nodes()) {
        nodes.push_back(
            {{"id", nd.id}, {"x", nd.pos.x}, {"y", nd.pos.y}, {"power_ratio", nd.power_ratio}, {"signal", nd.signal}});
    }
    return {{"side", t.side()}, {"range", t.range()}, {"nodes", std::move(nodes)}};
}

Topology topology_from_json(const Json& j) {
    const double side = field_or<double>(j, "side", 100.0);
    const double range = field<double>(j, "range");
    const Json& arr = j.contains("nodes") ? j.at("nodes") : throw ParseError("missing field 'nodes'");
    if (!arr.is_array()) throw ParseError("'nodes' must be an array");
    std::vector<Node> nodes;
    nodes.reserve(arr.size());
    for (const auto& e : arr) {
        Node nd;
        nd.id = field<NodeId>(e, "id");
        nd.pos = {field<double>(e, "x"), field<double>(e, "y")};
        nd.power_ratio = field_or<double>(e, "power_ratio", 1.0);
        nd.signal = field_or<double>(e, "signal", 0.0);
        nodes.push_back(nd);
    }
    try {
        return Topology(std::move(nodes), range, side);
    } catch (const ConfigError& e) {
        throw ParseError(std::string("invalid topology: ") + e.what());
    }
}

Topology parse_topology(std::string_view text) { return topology_from_json(parse_json(text)); }

Json state_to_json(const ClusteringState& st) {
    Json weights = Json::object(), heads = Json::object(), roles = Json::object(), memory = Json::object();
    for (const auto& s : st.nodes) {
        const std::string key = std::to_string(s.id);
        weights[key] = s.weight;
        heads[key] = s.head;
        roles[key] = role_code(s.role);
        if (s.prev_neighborhood) memory[key] = *s.prev_neighborhood;
    }
    return {{"weights", std::move(weights)},
            {"heads", std::move(heads)},
            {"roles", std::move(roles)},
            {"beacons", st.beacon_count},
            {"settled", st.settled},
            {"rounds", st.rounds},
            {"prev_neighborhood", std::move(memory)}};
}

ClusteringState state_from_json(const Json& j) {
    const auto weights = field<Json>(j, "weights");
    const auto heads = field<Json>(j, "heads");
    if (!weights.is_object() || !heads.is_object()) throw ParseError("'weights' and 'heads' must be objects");
    ClusteringState st;
    for (const auto& [key, w] : weights.items()) {
        NodeState s;
        s.id = parse_id_key(key);
        if (!w.is_number()) throw ParseError("weight of node " + key + " is not a number");
        s.weight = w.get<double>();
        if (!heads.contains(key)) throw ParseError("no head for node " + key);
        s.head = heads.at(key).get<NodeId>();
        st.nodes.push_back(std::move(s));
    }
    std::sort(st.nodes.begin(), st.nodes.end(), [](const NodeState& a, const NodeState& b) { return a.id < b.id; });
    if (j.contains("prev_neighborhood")) {
        for (const auto& [key, ids] : j.at("prev_neighborhood").items()) {
            const NodeId id = parse_id_key(key);
            auto it = std::find_if(st.nodes.begin(), st.nodes.end(), [id](const NodeState& s) { return s.id == id; });
            if (it == st.nodes.end()) throw ParseError("memory for unknown node " + key);
            auto v = ids.get<std::vector<NodeId>>();
            std::sort(v.begin(), v.end());
            it->prev_neighborhood = std::move(v);
        }
    }
    derive_roles(st);
    if (j.contains("roles")) {
        for (const auto& s : st.nodes) {
            const auto key = std::to_string(s.id);
            if (j.at("roles").contains(key) && parse_role(j.at("roles").at(key).get<std::string>()) != s.role)
                throw ParseError("role of node " + key + " contradicts the head pointers");
        }
    }
    st.beacon_count = field_or<std::uint64_t>(j, "beacons", 0);
    st.settled = field_or<bool>(j, "settled", true);
    st.rounds = field_or<int>(j, "rounds", 0);
    return st;
}

ClusteringState parse_state(std::string_view text) { return state_from_json(parse_json(text)); }

Json wca_to_json(const Topology& t, const WcaResult& r) {
    Json weights = Json::object(), heads = Json::object(), roles = Json::object();
    for (std::size_t i = 0; i < t.size(); ++i) {
        const std::string key = std::to_string(t.at(i).id);
        weights[key] = r.weights[i];
        heads[key] = r.head_of[i];
        roles[key] = r.head_of[i] == t.at(i).id ? "CH" : "SL";
    }
    return {{"weights", std::move(weights)},
            {"heads", std::move(heads)},
            {"roles", std::move(roles)},
            {"beacons", t.size()}};
}

Json report_to_json(const DisseminationReport& r) {
    return {{"rounds", r.rounds},
            {"injection_rounds", r.injection_rounds},
            {"uplink_transmissions", r.uplink_transmissions},
            {"adhoc_transmissions", r.adhoc_transmissions},
            {"injection_points", r.injection_points},
            {"unreachable", r.unreachable},
            {"complete", r.complete}};
}

std::string trace_to_jsonl(const std::vector<TraceEvent>& trace) {
    std::string out;
    for (const auto& e : trace) {
        Json j = {{"round", e.round},
                  {"kind", e.kind == TraceEvent::Kind::Inject ? "inject" : "forward"},
                  {"from", e.from},
                  {"to", e.to},
                  {"chunk", e.chunk}};
        out += j.dump();
        out += '\n';
    }
    return out;
}

Json event_to_json(const TopologyEvent& ev) {
    return std::visit(
        [](const auto& e) -> Json {
            using E = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<E, NodeMoved>) {
                return {{"type", "move"}, {"id", e.id}, {"x", e.pos.x}, {"y", e.pos.y}};
            } else if constexpr (std::is_same_v<E, NodeRemoved>) {
                return {{"type", "remove"}, {"id", e.id}};
            } else if constexpr (std::is_same_v<E, NodeAdded>) {
                return {{"type", "add"},         {"id", e.node.id},
                        {"x", e.node.pos.x},     {"y", e.node.pos.y},
                        {"power_ratio", e.node.power_ratio}, {"signal", e.node.signal}};
            } else {
                Json j = {{"type", "attr"}, {"id", e.id}};
                if (e.power_ratio) j["power_ratio"] = *e.power_ratio;
                if (e.signal) j["signal"] = *e.signal;
                return j;
            }
        },
        ev);
}

TopologyEvent event_from_json(const Json& j) {
    const auto type = field<std::string>(j, "type");
    const auto id = field<NodeId>(j, "id");
    if (type == "move") return NodeMoved{id, {field<double>(j, "x"), field<double>(j, "y")}};
    if (type == "remove") return NodeRemoved{id};
    if (type == "add") {
        Node nd;
        nd.id = id;
        nd.pos = {field<double>(j, "x"), field<double>(j, "y")};
        nd.power_ratio = field_or<double>(j, "power_ratio", 1.0);
        nd.signal = field_or<double>(j, "signal", 0.0);
        return NodeAdded{nd};
    }
    if (type == "attr") {
        AttributeChanged a{id, std::nullopt, std::nullopt};
        if (j.contains("power_ratio")) a.power_ratio = field<double>(j, "power_ratio");
        if (j.contains("signal")) a.signal = field<double>(j, "signal");
        if (!a.power_ratio && !a.signal) throw ParseError("attr event changes nothing");
        return a;
    }
    throw ParseError("unknown event type '" + type + "'");
}

std::vector<TopologyEvent> parse_events(std::string_view text) {
    std::vector<TopologyEvent> out;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        try {
            out.push_back(event_from_json(parse_json(line, lineno)));
        } catch (const ParseError& e) {
            if (e.line() > 0) throw;
            throw ParseError(e.what(), lineno);
        }
    }
    return out;
}

Json trends_to_json(const TrendReport& r) {
    Json arr = Json::array();
    for (const auto& p : r.per_n) {
        arr.push_back({{"n", p.n},
                       {"heads_range_correlation", p.heads_range_correlation},
                       {"waca_le_wca_fraction", p.waca_le_wca_fraction},
                       {"waca_le_wca_points", p.waca_le_wca_points},
                       {"range_points", p.range_points},
                       {"waca_heads_avg", p.waca_heads_avg},
                       {"wca_heads_avg", p.wca_heads_avg},
                       {"heads_first", p.heads_first},
                       {"heads_last", p.heads_last},
                       {"subhead_peak_range", p.subhead_peak_range},
                       {"subhead_peak", p.subhead_peak},
                       {"subheads_first", p.subheads_first},
                       {"subheads_last", p.subheads_last}});
    }
    return {{"per_n", std::move(arr)}};
}

Json weight_config_to_json(const WeightConfig& c) {
    return {{"wf1", c.wf_power},         {"wf2", c.wf_signal}, {"wf3", c.wf_clustering},
            {"wf4", c.wf_degree},        {"wf5", c.wf_stability}, {"ideal_degree", c.ideal_degree},
            {"log_base", c.log_base},    {"pa_floor", c.pa_floor}};
}

WeightConfig weight_config_from_json(const Json& j, WeightConfig c) {
    require_known_keys(j, {"wf1", "wf2", "wf3", "wf4", "wf5", "ideal_degree", "log_base", "pa_floor"}, "weights");
    c.wf_power = field_or(j, "wf1", c.wf_power);
    c.wf_signal = field_or(j, "wf2", c.wf_signal);
    c.wf_clustering = field_or(j, "wf3", c.wf_clustering);
    c.wf_degree = field_or(j, "wf4", c.wf_degree);
    c.wf_stability = field_or(j, "wf5", c.wf_stability);
    c.ideal_degree = field_or(j, "ideal_degree", c.ideal_degree);
    c.log_base = field_or(j, "log_base", c.log_base);
    c.pa_floor = field_or(j, "pa_floor", c.pa_floor);
    return c;
}

Json wca_config_to_json(const WcaConfig& c) {
    return {{"c1", c.c_degree}, {"c2", c.c_distance}, {"c3", c.c_mobility},
            {"c4", c.c_service_time}, {"ideal_degree", c.ideal_degree}};
}

WcaConfig wca_config_from_json(const Json& j, WcaConfig c) {
    require_known_keys(j, {"c1", "c2", "c3", "c4", "ideal_degree"}, "wca");
    c.c_degree = field_or(j, "c1", c.c_degree);
    c.c_distance = field_or(j, "c2", c.c_distance);
    c.c_mobility = field_or(j, "c3", c.c_mobility);
    c.c_service_time = field_or(j, "c4", c.c_service_time);
    c.ideal_degree = field_or(j, "ideal_degree", c.ideal_degree);
    return c;
}

Json power_model_to_json(const PowerModel& m) {
    if (m.kind == PowerModel::Kind::Constant) return {{"kind", "constant"}, {"value", m.value}};
    return {{"kind", "uniform"}, {"lo", m.lo}, {"hi", m.hi}};
}

PowerModel power_model_from_json(const Json& j) {
    const auto kind = field<std::string>(j, "kind");
    if (kind == "constant") return PowerModel::constant(field<double>(j, "value"));
    if (kind == "uniform") return PowerModel::uniform(field<double>(j, "lo"), field<double>(j, "hi"));
    throw ParseError("unknown power model '" + kind + "'");
}

Json signal_model_to_json(const SignalModel& m) {
    switch (m.kind) {
    case SignalModel::Kind::Constant: return {{"kind", "constant"}, {"value", m.value}};
    case SignalModel::Kind::UniformRandom: return {{"kind", "uniform"}};
    case SignalModel::Kind::BaseStations: {
        Json st = Json::array();
        for (const auto& p : m.stations) st.push_back({p.x, p.y});
        return {{"kind", "base_stations"}, {"stations", std::move(st)}, {"station_range", m.station_range}};
    }
    }
    return {};
}

SignalModel signal_model_from_json(const Json& j) {
    const auto kind = field<std::string>(j, "kind");
    if (kind == "constant") return SignalModel::constant(field<double>(j, "value"));
    if (kind == "uniform") return SignalModel::uniform();
    if (kind == "base_stations") {
        std::vector<Vec2> stations;
        for (const auto& p : field<Json>(j, "stations")) {
            const auto xy = p.get<std::vector<double>>();
            if (xy.size() != 2) throw ParseError("base station must be [x, y]");
            stations.push_back({xy[0], xy[1]});
        }
        return SignalModel::base_stations(std::move(stations), field<double>(j, "station_range"));
    }
    throw ParseError("unknown signal model '" + kind + "'");
}

Json sweep_config_to_json(const SweepConfig& c) {
    return {{"side", c.side},
            {"node_counts", c.node_counts},
            {"ranges", c.ranges},
            {"runs", c.runs},
            {"base_seed", c.base_seed},
            {"max_rounds", c.max_rounds},
            {"weights", weight_config_to_json(c.weight_cfg)},
            {"wca", wca_config_to_json(c.wca_cfg)},
            {"power_model", power_model_to_json(c.power_model)},
            {"signal_model", signal_model_to_json(c.signal_model)}};
}

SweepConfig sweep_config_from_json(const Json& j, SweepConfig c) {
    c.side = field_or(j, "side", c.side);
    c.node_counts = field_or(j, "node_counts", c.node_counts);
    c.ranges = field_or(j, "ranges", c.ranges);
    c.runs = field_or(j, "runs", c.runs);
    c.base_seed = field_or(j, "base_seed", c.base_seed);
    c.max_rounds = field_or(j, "max_rounds", c.max_rounds);
    if (j.contains("weights")) c.weight_cfg = weight_config_from_json(j.at("weights"), c.weight_cfg);
    if (j.contains("wca")) c.wca_cfg = wca_config_from_json(j.at("wca"), c.wca_cfg);
    if (j.contains("power_model")) c.power_model = power_model_from_json(j.at("power_model"));
    if (j.contains("signal_model")) c.signal_model = signal_model_from_json(j.at("signal_model"));
    return c;
}

std::string topology_to_dot(const Topology& t) {
    std::ostringstream out;
    out << "graph topology {\n";
    for (const auto& nd : t.nodes()) out << "  " << nd.id << " [label=\"" << nd.id << "\"];\n";
    for (std::size_t i = 0; i < t.size(); ++i)
        for (auto j : t.adjacent(i))
            if (j > i) out << "  " << t.at(i).id << " -- " << t.at(j).id << ";\n";
    out << "}\n";
    return out.str();
}

namespace {

const char* role_color(Role r) {
    switch (r) {
    case Role::Clusterhead: return "red";
    case Role::SubHead: return "orange";
    case Role::Slave: return "lightblue";
    }
    return "white";
}

std::string clustered_dot(const Topology& t, const std::vector<NodeId>& heads, const std::vector<Role>& roles) {
    std::ostringstream out;
    out << "graph clustering {\n  node [style=filled];\n";
    for (std::size_t i = 0; i < t.size(); ++i) {
        const auto id = t.at(i).id;
        out << "  " << id << " [label=\"" << id << "\\n" << role_code(roles[i]) << "\", fillcolor=" << role_color(roles[i])
            << "];\n";
    }
    for (std::size_t i = 0; i < t.size(); ++i) {
        for (auto j : t.adjacent(i)) {
            if (j < i) continue;
            const auto a = t.at(i).id, b = t.at(j).id;
            if (heads[i] == b) {
                out << "  " << a << " -- " << b << " [dir=forward, penwidth=2];\n";
            } else if (heads[j] == a) {
                out << "  " << b << " -- " << a << " [dir=forward, penwidth=2];\n";
            } else {
                out << "  " << a << " -- " << b << " [style=dashed, color=gray];\n";
            }
        }
    }
    out << "}\n";
    return out.str();
}

}  // namespace

std::string state_to_dot(const Topology& t, const ClusteringState& st) {
    std::vector<NodeId> heads(t.size());
    std::vector<Role> roles(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        const auto& s = st.at(t.at(i).id);
        heads[i] = s.head;
        roles[i] = s.role;
    }
    return clustered_dot(t, heads, roles);
}

std::string wca_to_dot(const Topology& t, const WcaResult& r) {
    std::vector<Role> roles(t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        roles[i] = r.head_of[i] == t.at(i).id ? Role::Clusterhead : Role::Slave;
    return clustered_dot(t, r.head_of, roles);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace wacasim::io
