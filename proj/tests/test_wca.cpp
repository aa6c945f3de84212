#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "oracle.hpp"
#include "wacasim/errors.hpp"
#include "wacasim/wca.hpp"

using namespace wacasim;

TEST_CASE("WCA weights on the five-node fixture") {
    const Topology t = testutil::fixture("five_node.json");
    const WcaConfig cfg;
    CHECK(wca_weight(t, NodeId{0}, cfg) == doctest::Approx(9.3));
    CHECK(wca_weight(t, NodeId{1}, cfg) == doctest::Approx(7.1));
    CHECK(wca_weight(t, NodeId{2}, cfg) == doctest::Approx(8.2));
    CHECK(wca_weight(t, NodeId{3}, cfg) == doctest::Approx(8.2));
    CHECK(wca_weight(t, NodeId{4}, cfg) == doctest::Approx(7.1));
    const WcaResult r = wca_elect(t, cfg);
    CHECK(r.heads == std::vector<NodeId>{1, 4});
    CHECK(r.head_of == std::vector<NodeId>{1, 1, 1, 4, 4});
}

TEST_CASE("WCA weight matches a brute-force sum") {
    const WcaConfig cfg;
    for (Seed seed = 0; seed < 20; ++seed) {
        const Topology t = testutil::random_topology(30, 25.0, seed);
        const std::vector<Node> raw(t.nodes().begin(), t.nodes().end());
        for (std::size_t i = 0; i < t.size(); ++i) {
            const auto nb = oracle::neighbors(raw, t.range(), i);
            double sum = 0;
            for (auto j : nb) sum += oracle::dist(raw[i], raw[j]);
            const double want = 0.7 * std::fabs(static_cast<double>(nb.size()) - 7.0) + 0.2 * sum;
            CHECK(oracle::rel_err(wca_weight(t, i, cfg), want) <= 1e-12);
        }
    }
}

TEST_CASE("WCA output is a dominating set with one-hop assignment") {
    for (Seed seed = 0; seed < 300; ++seed) {
        const std::size_t n = 1 + seed % 60;
        const Topology t = testutil::random_topology(n, 5.0 + static_cast<double>(seed % 14) * 5.0, seed);
        const WcaResult r = wca_elect(t, WcaConfig{});
        REQUIRE(r.head_of.size() == n);
        std::set<NodeId> heads(r.heads.begin(), r.heads.end());
        CHECK(heads.size() == r.heads.size());
        for (std::size_t i = 0; i < n; ++i) {
            const NodeId h = r.head_of[i];
            CHECK(heads.count(h) == 1);
            if (h != t.at(i).id) CHECK(t.linked(i, t.index_of(h)));
            else CHECK(heads.count(t.at(i).id) == 1);
        }
        for (NodeId h : r.heads) CHECK(r.head_of[t.index_of(h)] == h);
    }
}

TEST_CASE("WCA extremes") {
    const Topology far = testutil::random_topology(15, 1e-6, 4);
    CHECK(wca_elect(far, WcaConfig{}).head_count() == 15);
    const Topology full = testutil::random_topology(15, 200.0, 4);
    CHECK(wca_elect(full, WcaConfig{}).head_count() == 1);
}

TEST_CASE("WCA config validation") {
    WcaConfig cfg;
    cfg.ideal_degree = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = {};
    cfg.c_degree = -1;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("WCA worked examples") {
    const WcaConfig cfg;
    const Topology lone({Node{0, {5, 5}, 1, 0}}, 10.0);
    CHECK(wca_weight(lone, std::size_t{0}, cfg) == doctest::Approx(0.7 * 7));
    // Hub with exactly seven neighbors at distance 5.
    std::vector<Node> nodes{Node{0, {50, 50}, 1, 0}};
    for (int k = 0; k < 7; ++k) {
        const double a = 2.0 * 3.141592653589793 * k / 7.0;
        nodes.push_back(Node{k + 1, {50 + 5 * std::cos(a), 50 + 5 * std::sin(a)}, 1, 0});
    }
    const Topology hub(nodes, 5.5);
    REQUIRE(hub.degree(0) == 7);
    CHECK(wca_weight(hub, std::size_t{0}, cfg) == doctest::Approx(0.2 * 5 * 7));
}

TEST_CASE("WCA ties go to the lowest id") {
    // Zero factors make every weight equal.
    WcaConfig flat;
    flat.c_degree = flat.c_distance = flat.c_mobility = flat.c_service_time = 0.0;
    const Topology path({Node{0, {0, 0}, 1, 0}, Node{1, {5, 0}, 1, 0}, Node{2, {10, 0}, 1, 0}}, 6.0);
    const WcaResult r = wca_elect(path, flat);
    CHECK(r.heads == std::vector<NodeId>{0, 2});
    CHECK(r.head_of[1] == 0);
}
