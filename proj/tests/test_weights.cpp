#include <doctest.h>

#include <cmath>
#include <set>

#include "helpers.hpp"
#include "oracle.hpp"
#include "wacasim/errors.hpp"
#include "wacasim/election.hpp"
#include "wacasim/weights.hpp"

using namespace wacasim;

TEST_CASE("power appropriateness") {
    const WeightConfig cfg;
    CHECK(power_appropriateness(1.6, cfg) == doctest::Approx(1.5));
    CHECK(power_appropriateness(10.6, cfg) == doctest::Approx(2.0));
    CHECK(power_appropriateness(0.6, cfg) == 0.0);
    CHECK(power_appropriateness(0.5, cfg) == 0.0);
    CHECK(power_appropriateness(0.0, cfg) == 0.0);
    // Just above the threshold the log term would be very negative; the floor holds.
    CHECK(power_appropriateness(0.6 + 1e-9, cfg) == 0.0);
    WeightConfig floored;
    floored.pa_floor = 0.25;
    CHECK(power_appropriateness(0.5, floored) == 0.25);
    CHECK(power_appropriateness(0.6001, floored) == 0.25);
    WeightConfig base2;
    base2.log_base = 2.0;
    CHECK(power_appropriateness(2.6, base2) == doctest::Approx(2.0));
}

TEST_CASE("power appropriateness is nondecreasing") {
    const WeightConfig cfg;
    double last = -1.0;
    for (double p = 0.0; p < 20.0; p += 0.01) {
        const double v = power_appropriateness(p, cfg);
        CHECK(v >= last);
        last = v;
    }
}

TEST_CASE("degree term") {
    const WeightConfig cfg;
    CHECK(degree_term(7, cfg) == 1.0);
    CHECK(degree_term(0, cfg) == 0.0);
    CHECK(degree_term(14, cfg) == 0.0);
    CHECK(degree_term(21, cfg) == doctest::Approx(-1.0));
    CHECK(degree_term(6, cfg) == doctest::Approx(6.0 / 7.0));
}

TEST_CASE("stability term") {
    using V = std::vector<NodeId>;
    const V curr{2, 3, 4};
    CHECK(stability_term(V{1, 2, 3}, curr, true) == doctest::Approx(2.0 / 3.0));
    CHECK(stability_term(V{1, 2, 3}, curr, false) == 0.0);
    CHECK(stability_term(std::nullopt, curr, true) == 0.0);
    CHECK(stability_term(V{2, 3, 4}, curr, true) == 1.0);
    CHECK(stability_term(V{}, V{}, true) == 1.0);
    CHECK(stability_term(V{7, 8}, curr, true) == 0.0);
    CHECK(stability_term(V{}, curr, true) == 0.0);
}

TEST_CASE("stability term matches set oracle") {
    Rng r(17);
    for (int trial = 0; trial < 500; ++trial) {
        std::set<NodeId> a, b;
        const auto na = r.below(12), nb = r.below(12);
        for (std::uint64_t i = 0; i < na; ++i) a.insert(static_cast<NodeId>(r.below(20)));
        for (std::uint64_t i = 0; i < nb; ++i) b.insert(static_cast<NodeId>(r.below(20)));
        const std::vector<NodeId> va(a.begin(), a.end()), vb(b.begin(), b.end());
        const double got = stability_term(va, vb, true);
        CHECK(got == doctest::Approx(oracle::stability(&a, b, true)).epsilon(1e-14));
        CHECK(got >= 0.0);
        CHECK(got <= 1.0);
    }
}

TEST_CASE("isolated node weight") {
    const Topology t({Node{0, {50, 50}, 1.6, 1.0}}, 10.0);
    CHECK(node_weight(t, 0, false, std::nullopt, WeightConfig{}) == doctest::Approx(2.35));
}

TEST_CASE("weight terms on the five-node fixture") {
    const Topology t = testutil::fixture("five_node.json");
    const WeightConfig cfg;
    const WeightTerms w4 = weight_terms(t, 4, false, std::nullopt, cfg);
    CHECK(w4.power == doctest::Approx(2.0));
    CHECK(w4.signal == 0.25);
    CHECK(w4.clustering == 1.0);
    CHECK(w4.degree == doctest::Approx(2.0 / 7.0));
    CHECK(w4.stability == 0.0);
    const WeightTerms w3 = weight_terms(t, 3, false, std::nullopt, cfg);
    CHECK(w3.power == 0.0);
    CHECK(w3.degree == doctest::Approx(3.0 / 7.0));
    CHECK(combine(w4, cfg) == doctest::Approx(0.9 * 2.0 + 0.25 + 0.85 + 0.65 * 2.0 / 7.0));
}

TEST_CASE("weights agree with the oracle on random deployments") {
    WeightConfig alt;
    alt.wf_power = 0.3;
    alt.wf_signal = 0.2;
    alt.ideal_degree = 4;
    alt.pa_floor = -0.5;
    for (const WeightConfig& cfg : {WeightConfig{}, alt}) {
        for (Seed seed = 0; seed < 40; ++seed) {
            const std::size_t n = 1 + seed % 50;
            const double range = 8.0 + static_cast<double>(seed % 9) * 8.0;
            const Topology t = testutil::random_topology(n, range, seed);
            const std::vector<Node> raw(t.nodes().begin(), t.nodes().end());
            for (std::size_t i = 0; i < n; ++i) {
                const double got = node_weight(t, i, false, std::nullopt, cfg);
                CHECK(oracle::rel_err(got, oracle::weight(raw, range, i, cfg)) <= 1e-12);
                // Sitting head with a memory drawn from the current neighborhood minus one.
                auto nb = t.neighbors(t.at(i).id);
                std::vector<NodeId> prev(nb.begin(), nb.end());
                if (!prev.empty()) prev.pop_back();
                prev.push_back(100000);
                const std::set<NodeId> sprev(prev.begin(), prev.end());
                const double head = node_weight(t, i, true, prev, cfg);
                CHECK(oracle::rel_err(head, oracle::weight(raw, range, i, cfg, true, &sprev)) <= 1e-12);
            }
        }
    }
}

TEST_CASE("weight config validation") {
    WeightConfig cfg;
    cfg.ideal_degree = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = {};
    cfg.log_base = 1.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = {};
    cfg.wf_power = std::nan("");
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    CHECK_NOTHROW(WeightConfig{}.validate());
}

TEST_CASE("stability term worked examples") {
    using V = std::vector<NodeId>;
    CHECK(stability_term(V{1, 2, 3}, V{1, 2, 3}, true) == 1.0);
    CHECK(stability_term(V{1, 2}, V{3, 4}, true) == 0.0);
}

TEST_CASE("zero weighing factors give zero weight") {
    WeightConfig zero;
    zero.wf_power = zero.wf_signal = zero.wf_clustering = zero.wf_degree = zero.wf_stability = 0.0;
    const Topology t = testutil::random_topology(25, 30.0, 12);
    for (std::size_t i = 0; i < t.size(); ++i) CHECK(node_weight(t, i, false, std::nullopt, zero) == 0.0);
}

TEST_CASE("symmetric twins weigh the same") {
    const Topology t({Node{0, {40, 50}, 2.5, 0.3}, Node{1, {60, 50}, 2.5, 0.3}, Node{2, {50, 50}, 1.0, 0.0}}, 15.0);
    CHECK(node_weight(t, 0, false, std::nullopt, WeightConfig{}) ==
          node_weight(t, 1, false, std::nullopt, WeightConfig{}));
}

TEST_CASE("term ranges on random deployments") {
    const WeightConfig cfg;
    for (Seed seed = 0; seed < 30; ++seed) {
        const Topology t = testutil::random_topology(40, 10.0 + static_cast<double>(seed) * 2.0, seed);
        const ClusteringState st = settle(t, cfg);
        for (std::size_t i = 0; i < t.size(); ++i) {
            const auto& s = st.nodes[i];
            const WeightTerms w = weight_terms(t, i, s.is_head(), s.prev_neighborhood, cfg);
            CHECK(w.signal >= 0.0);
            CHECK(w.signal <= 1.0);
            CHECK(w.clustering >= 0.0);
            CHECK(w.clustering <= 1.0);
            CHECK(w.stability >= 0.0);
            CHECK(w.stability <= 1.0);
            CHECK(w.degree <= 1.0);
        }
    }
}
