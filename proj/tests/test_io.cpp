#include <doctest.h>

#include "helpers.hpp"
#include "wacasim/errors.hpp"
#include "wacasim/io.hpp"

using namespace wacasim;

TEST_CASE("topology round trip is exact") {
    const Topology t = testutil::random_topology(25, 20.0, 8);
    const std::string text = io::dump(io::topology_to_json(t));
    const Topology back = io::parse_topology(text);
    REQUIRE(back.size() == t.size());
    for (std::size_t i = 0; i < t.size(); ++i) CHECK(back.at(i) == t.at(i));
    CHECK(back.range() == t.range());
    CHECK(io::dump(io::topology_to_json(back)) == text);
}

TEST_CASE("missing attributes take defaults") {
    const Topology t = io::parse_topology(R"({"range": 5, "nodes": [{"id": 3, "x": 1, "y": 2}]})");
    CHECK(t.node(3).power_ratio == 1.0);
    CHECK(t.node(3).signal == 0.0);
    CHECK(t.side() == 100.0);
}

TEST_CASE("malformed documents report the line") {
    try {
        io::parse_topology(io::read_file(testutil::fixture_path("malformed_topology.json")));
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 6);
        CHECK(std::string(e.what()).find("line 6") != std::string::npos);
    }
    CHECK_THROWS_AS(io::parse_topology(R"({"nodes": []})"), ParseError);
    CHECK_THROWS_AS(io::parse_topology(R"({"range": 5, "nodes": [{"id": 1, "x": "a", "y": 0}]})"), ParseError);
}

TEST_CASE("state round trip") {
    const Topology t = testutil::random_topology(30, 25.0, 2);
    const ClusteringState st = settle(t, WeightConfig{});
    const io::Json j = io::state_to_json(st);
    CHECK(j.contains("weights"));
    CHECK(j.contains("heads"));
    CHECK(j.contains("roles"));
    CHECK(j["beacons"] == st.beacon_count);
    const ClusteringState back = io::parse_state(io::dump(j));
    CHECK(back == st);
}

TEST_CASE("state import checks roles against heads") {
    const Topology t = testutil::fixture("path3.json");
    io::Json j = io::state_to_json(settle(t, WeightConfig{}));
    j["roles"]["0"] = "CH";
    CHECK_THROWS_AS(io::state_from_json(j), ParseError);
}

TEST_CASE("event scripts") {
    const auto events = io::parse_events(
        "# script\n{\"type\": \"move\", \"id\": 0, \"x\": 1, \"y\": 2}\n\n{\"type\": \"remove\", \"id\": 4}\n"
        "{\"type\": \"add\", \"id\": 9, \"x\": 5, \"y\": 5, \"power_ratio\": 2, \"signal\": 0.5}\n"
        "{\"type\": \"attr\", \"id\": 1, \"signal\": 0.3}\n");
    REQUIRE(events.size() == 4);
    CHECK(std::get<NodeMoved>(events[0]).pos == Vec2{1, 2});
    CHECK(std::get<NodeRemoved>(events[1]).id == 4);
    CHECK(std::get<NodeAdded>(events[2]).node.power_ratio == 2.0);
    const auto& a = std::get<AttributeChanged>(events[3]);
    CHECK(!a.power_ratio.has_value());
    CHECK(*a.signal == 0.3);
    for (const auto& ev : events) CHECK(io::event_to_json(io::event_from_json(io::event_to_json(ev))) == io::event_to_json(ev));
    CHECK(io::parse_events("").empty());
    try {
        io::parse_events(io::read_file(testutil::fixture_path("bad_event.jsonl")));
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("config documents round trip") {
    SweepConfig c;
    c.node_counts = {5, 9};
    c.ranges = {12.5};
    c.runs = 4;
    c.base_seed = 77;
    c.weight_cfg.wf_signal = 0.4;
    c.wca_cfg.c_degree = 0.3;
    c.power_model = PowerModel::constant(2.0);
    c.signal_model = SignalModel::base_stations({{1, 2}, {3, 4}}, 30.0);
    const SweepConfig back = io::sweep_config_from_json(io::sweep_config_to_json(c));
    CHECK(io::dump(io::sweep_config_to_json(back)) == io::dump(io::sweep_config_to_json(c)));
    CHECK(config_echo(back) == config_echo(c));
    CHECK_THROWS_AS(io::weight_config_from_json(io::Json::parse(R"({"wf9": 1})")), ConfigError);
}

TEST_CASE("dot output colors roles") {
    const Topology t = testutil::fixture("path3.json");
    const std::string dot = io::state_to_dot(t, settle(t, WeightConfig{}));
    CHECK(dot.rfind("graph", 0) == 0);
    CHECK(dot.find("2 [") != std::string::npos);
    CHECK(dot.find("red") != std::string::npos);
    CHECK(dot.find("orange") != std::string::npos);
    CHECK(dot.find("lightblue") != std::string::npos);
    CHECK(io::topology_to_dot(t).find("0 -- 1") != std::string::npos);
}

TEST_CASE("report and trace serialization") {
    const Topology t = testutil::fixture("path3.json");
    const ClusteringState st = settle(t, WeightConfig{});
    ContentJob job;
    job.interested = {0};
    job.chunk_count = 2;
    std::vector<TraceEvent> trace;
    const auto rep = disseminate(t, st, job, 0, &trace);
    const io::Json j = io::report_to_json(rep);
    CHECK(j["rounds"] == rep.rounds);
    CHECK(j["complete"] == true);
    const std::string lines = io::trace_to_jsonl(trace);
    CHECK(static_cast<std::size_t>(std::count(lines.begin(), lines.end(), '\n')) == trace.size());
    CHECK(lines.find("\"from\":-1") != std::string::npos);
}
