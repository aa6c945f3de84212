#include <doctest.h>

#include "helpers.hpp"
#include "wacasim/dissemination.hpp"
#include "wacasim/errors.hpp"

using namespace wacasim;

namespace {

ContentJob job(std::vector<NodeId> interested, int chunks) {
    ContentJob j;
    j.interested = std::move(interested);
    j.chunk_count = chunks;
    return j;
}

}  // namespace

TEST_CASE("single node partition is served from the backbone") {
    const Topology t({Node{0, {1, 1}, 2, 0.5}}, 10.0);
    const ClusteringState st = settle(t, WeightConfig{});
    const auto rep = disseminate(t, st, job({0}, 4), 0);
    CHECK(rep.complete);
    CHECK(rep.rounds == 4);
    CHECK(rep.uplink_transmissions == 4);
    CHECK(rep.adhoc_transmissions == 0);
    CHECK(rep.injection_points == std::vector<NodeId>{0});
}

TEST_CASE("two injection points halve the star's delivery time") {
    const Topology t = testutil::fixture("star.json");
    const ClusteringState st = settle(t, WeightConfig{});
    REQUIRE(st.clusterheads() == std::vector<NodeId>{1, 2});
    for (int k : {1, 2, 5, 8, 13}) {
        ContentJob both = job({0}, k);
        ContentJob one = both;
        one.max_injection_points = 1;
        const auto r2 = disseminate(t, st, both, 0);
        const auto r1 = disseminate(t, st, one, 0);
        CHECK(r2.complete);
        CHECK(r1.complete);
        CHECK(r2.injection_points.size() == 2);
        CHECK(r1.injection_points == std::vector<NodeId>{1});
        CHECK(r2.rounds <= r1.rounds);
        CHECK(r1.rounds == k);
        CHECK(r2.rounds == (k + 1) / 2);
        CHECK(r1.uplink_transmissions == static_cast<std::uint64_t>(k));
        CHECK(r2.uplink_transmissions == static_cast<std::uint64_t>(k));
    }
}

TEST_CASE("chain relays deliver to a slave") {
    const Topology t = testutil::fixture("path3.json");
    const ClusteringState st = settle(t, WeightConfig{});
    std::vector<TraceEvent> trace;
    const auto rep = disseminate(t, st, job({0}, 3), 0, &trace);
    CHECK(rep.complete);
    CHECK(rep.injection_points == std::vector<NodeId>{2});
    // Chunk c is injected in round c+1 and forwarded one hop in the same round.
    CHECK(rep.rounds == 4);
    CHECK(rep.injection_rounds == 3);
    CHECK(rep.adhoc_transmissions == 6);
    REQUIRE(!trace.empty());
    CHECK(trace.front().kind == TraceEvent::Kind::Inject);
    CHECK(trace.front().from == -1);
    CHECK(trace.front().to == 2);
}

TEST_CASE("partitions without a clusterhead path report unreachable ids") {
    const Topology t({Node{0, {0, 0}, 2, 0.5}, Node{1, {50, 50}, 2, 0.5}}, 10.0);
    const ClusteringState st = settle(t, WeightConfig{});
    const auto rep = disseminate(t, st, job({0, 1, 7}, 2), 0);
    CHECK(!rep.complete);
    CHECK(rep.unreachable == std::vector<NodeId>{7});
    CHECK(rep.injection_points == std::vector<NodeId>{0, 1});
}

TEST_CASE("all interested devices complete on connected random fixtures") {
    std::size_t checked = 0;
    for (Seed seed = 0; checked < 80; ++seed) {
        const Topology t = testutil::random_topology(10 + seed % 40, 35.0, seed);
        if (partitions(t).size() != 1) continue;
        ++checked;
        const ClusteringState st = settle(t, WeightConfig{});
        Rng rng(seed);
        ContentJob j = job({}, 1 + static_cast<int>(seed % 10));
        for (std::size_t i = 0; i < t.size(); ++i)
            if (rng.uniform01() < 0.3) j.interested.push_back(t.at(i).id);
        if (j.interested.empty()) j.interested.push_back(t.at(0).id);
        for (bool all : {false, true}) {
            j.relay_all = all;
            const auto rep = disseminate(t, st, j, seed);
            CHECK(rep.complete);
            CHECK(rep.uplink_transmissions >= static_cast<std::uint64_t>(j.chunk_count));
            CHECK(rep.rounds >= 1);
        }
    }
}

TEST_CASE("job validation") {
    const Topology t = testutil::fixture("path3.json");
    const ClusteringState st = settle(t, WeightConfig{});
    CHECK_THROWS_AS(disseminate(t, st, job({}, 1), 0), ConfigError);
    CHECK_THROWS_AS(disseminate(t, st, job({0}, 0), 0), ConfigError);
}

TEST_CASE("single chunk to a lone interested clusterhead") {
    const Topology t({Node{0, {1, 1}, 2, 0.5}}, 10.0);
    const auto rep = disseminate(t, settle(t, WeightConfig{}), job({0}, 1), 0);
    CHECK(rep.rounds == 1);
    CHECK(rep.uplink_transmissions == 1);
    CHECK(rep.adhoc_transmissions == 0);
}

TEST_CASE("two injection points halve the uplink phase") {
    const Topology t = testutil::fixture("star.json");
    const ClusteringState st = settle(t, WeightConfig{});
    const auto rep = disseminate(t, st, job({0}, 4), 0);
    CHECK(rep.injection_rounds == 2);
}

TEST_CASE("injection point selection") {
    SUBCASE("one clusterhead, one interested slave") {
        const Topology t = testutil::fixture("path3.json");
        CHECK(select_injection_points(settle(t, WeightConfig{}), t, job({0}, 1)) == std::vector<NodeId>{2});
    }
    SUBCASE("two clusterheads in one partition") {
        const Topology t = testutil::fixture("star.json");
        CHECK(select_injection_points(settle(t, WeightConfig{}), t, job({0}, 1)) == std::vector<NodeId>{1, 2});
    }
    SUBCASE("isolated interested device serves itself") {
        const Topology t({Node{0, {0, 0}, 2, 0.5}, Node{1, {3, 0}, 2, 0.1}, Node{2, {80, 80}, 1, 0}}, 10.0);
        CHECK(select_injection_points(settle(t, WeightConfig{}), t, job({2}, 1)) == std::vector<NodeId>{2});
    }
}
