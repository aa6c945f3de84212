// wacasim: command-line front end.
//
//   wacasim cluster     settle WACA on a topology, write state JSON (+ DOT)
//   wacasim compare     WACA vs WCA on one topology
//   wacasim experiment  range/size sweep, rows + aggregate CSV + trend JSON
//   wacasim disseminate chunked content distribution over the clustering
//   wacasim events      scripted topology events, incremental re-election
//
// Every run writes a manifest (<out-dir>/<command>.manifest.json) holding the
// merged configuration; `--config <manifest>` replays it. Flags override the
// config file, which overrides built-in defaults.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wacasim/dissemination.hpp"
#include "wacasim/election.hpp"
#include "wacasim/errors.hpp"
#include "wacasim/experiments.hpp"
#include "wacasim/io.hpp"
#include "wacasim/wca.hpp"

namespace {

using namespace wacasim;
using io::Json;

constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitInternal = 4;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string default_out_dir() {
    if (const char* env = std::getenv("WACASIM_OUT_DIR"); env != nullptr && *env) return env;
    return ".";
}

// Options shared by every command that needs a topology and WACA weights.
struct CommonFlags {
    std::string config_path;
    std::string out_dir;
    std::string manifest_path;
    std::optional<std::string> topology;
    std::optional<int> n;
    std::optional<double> side;
    std::optional<double> range;
    std::optional<std::uint64_t> seed;
    std::optional<double> power_lo, power_hi, power_const, signal_const;
    std::optional<double> wf[5];
    std::optional<int> ideal_degree;
    std::optional<double> log_base;
    std::optional<int> max_rounds;
};

void add_common(CLI::App* app, CommonFlags& f, bool with_source = true) {
    app->add_option("--config", f.config_path, "JSON config or manifest to start from");
    app->add_option("--out-dir", f.out_dir, "Output directory (default $WACASIM_OUT_DIR or .)");
    app->add_option("--manifest", f.manifest_path, "Manifest path (default <out-dir>/<command>.manifest.json)");
    app->add_option("--seed", f.seed, "Base seed; derived from the config when omitted");
    app->add_option("--wf1", f.wf[0], "Weight of power appropriateness");
    app->add_option("--wf2", f.wf[1], "Weight of backbone signal");
    app->add_option("--wf3", f.wf[2], "Weight of local clustering coefficient");
    app->add_option("--wf4", f.wf[3], "Weight of dissemination degree");
    app->add_option("--wf5", f.wf[4], "Weight of stability coefficient");
    app->add_option("--ideal-degree", f.ideal_degree, "Ideal clusterhead degree");
    app->add_option("--log-base", f.log_base, "Log base of the power term");
    app->add_option("--max-rounds", f.max_rounds, "Settle round cap");
    if (!with_source) return;
    app->add_option("--topology", f.topology, "Topology JSON file");
    app->add_option("--n", f.n, "Deploy this many nodes uniformly");
    app->add_option("--side", f.side, "Deployment square side");
    app->add_option("--range", f.range, "Transmission range");
    app->add_option("--power-lo", f.power_lo, "Uniform power ratio lower bound");
    app->add_option("--power-hi", f.power_hi, "Uniform power ratio upper bound");
    app->add_option("--power", f.power_const, "Constant power ratio for every node");
    app->add_option("--signal", f.signal_const, "Constant backbone signal for every node");
}

Json load_config(const std::string& path) {
    if (path.empty()) return Json::object();
    Json j;
    const std::string text = io::read_file(path);
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
    if (j.contains("config") && j.at("config").is_object()) return j.at("config");
    return j;
}

// Recursive object merge. Unlike a JSON merge patch, null values are kept so a
// manifest's explicit "unset" entries survive a replay.
void overlay(Json& base, const Json& patch) {
    if (!patch.is_object() || !base.is_object()) {
        base = patch;
        return;
    }
    for (const auto& [k, v] : patch.items()) {
        if (v.is_object() && base.contains(k) && base[k].is_object()) {
            overlay(base[k], v);
        } else {
            base[k] = v;
        }
    }
}

// Default config for the topology source + weights part.
Json source_defaults() {
    return {{"source",
             {{"topology_file", nullptr},
              {"n", nullptr},
              {"side", 100.0},
              {"range", nullptr},
              {"power_model", io::power_model_to_json(PowerModel::uniform(0.7, 4.0))},
              {"signal_model", io::signal_model_to_json(SignalModel::uniform())}}},
            {"weights", io::weight_config_to_json(WeightConfig{})},
            {"max_rounds", kDefaultMaxRounds},
            {"seed", nullptr}};
}

void apply_common(Json& cfg, const CommonFlags& f) {
    Json& w = cfg["weights"];
    const char* keys[5] = {"wf1", "wf2", "wf3", "wf4", "wf5"};
    for (int k = 0; k < 5; ++k)
        if (f.wf[k]) w[keys[k]] = *f.wf[k];
    if (f.ideal_degree) w["ideal_degree"] = *f.ideal_degree;
    if (f.log_base) w["log_base"] = *f.log_base;
    if (f.max_rounds) cfg["max_rounds"] = *f.max_rounds;
    if (f.seed) cfg["seed"] = *f.seed;
    if (!cfg.contains("source")) return;
    Json& s = cfg["source"];
    if (f.topology) s["topology_file"] = *f.topology;
    if (f.n) s["n"] = *f.n;
    if (f.side) s["side"] = *f.side;
    if (f.range) s["range"] = *f.range;
    if (f.power_const) s["power_model"] = io::power_model_to_json(PowerModel::constant(*f.power_const));
    if (f.power_lo || f.power_hi) {
        auto pm = s["power_model"].value("kind", "") == "uniform" ? io::power_model_from_json(s["power_model"])
                                                                 : PowerModel::uniform(0.7, 4.0);
        if (f.power_lo) pm.lo = *f.power_lo;
        if (f.power_hi) pm.hi = *f.power_hi;
        s["power_model"] = io::power_model_to_json(pm);
    }
    if (f.signal_const) s["signal_model"] = io::signal_model_to_json(SignalModel::constant(*f.signal_const));
}

// Fills in a seed derived from the rest of the config when none was given.
Seed resolve_seed(Json& cfg) {
    if (cfg.contains("seed") && !cfg["seed"].is_null()) return cfg["seed"].get<Seed>();
    Json copy = cfg;
    copy.erase("seed");
    copy.erase("outputs");
    copy.erase("out_dir");
    const std::string text = copy.dump();
    Seed h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) h = (h ^ c) * 0x100000001b3ULL;
    h = mix64(h);
    cfg["seed"] = h;
    std::cerr << "seed=" << h << " (derived from config)\n";
    return h;
}

Topology load_source(const Json& cfg, Seed seed) {
    const Json& s = cfg.at("source");
    if (!s["topology_file"].is_null()) {
        const auto path = s["topology_file"].get<std::string>();
        try {
            return io::parse_topology(io::read_file(path));
        } catch (const ParseError& e) {
            throw ParseError(path + ": " + e.what());
        }
    }
    if (s["n"].is_null() || s["range"].is_null())
        throw UsageError("need --topology FILE or both --n and --range");
    const int n = s["n"].get<int>();
    if (n < 1) throw UsageError("--n must be >= 1");
    Topology t = deploy_uniform(static_cast<std::size_t>(n), s["side"].get<double>(), derive_seed(seed, {0}),
                                s["range"].get<double>());
    t = assign_power(t, io::power_model_from_json(s["power_model"]), derive_seed(seed, {1}));
    return assign_signal(t, io::signal_model_from_json(s["signal_model"]), derive_seed(seed, {2}));
}

std::string out_path(const std::string& out_dir, const std::string& name) {
    return (std::filesystem::path(out_dir) / name).string();
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir + ": " + ec.message());
}

void write_manifest(const std::string& cmd, const CommonFlags& f, const std::string& out_dir, const Json& cfg) {
    const std::string path = f.manifest_path.empty() ? out_path(out_dir, cmd + ".manifest.json") : f.manifest_path;
    Json m = {{"tool", "wacasim"}, {"subcommand", cmd}, {"seed", cfg.at("seed")}, {"config", cfg}};
    io::write_file(path, io::dump(m));
}

// Resolves the output directory and records it so manifest replays write to the same place.
std::string resolve_out_dir(const CommonFlags& f, Json& cfg) {
    std::string dir = default_out_dir();
    if (!f.out_dir.empty()) {
        dir = f.out_dir;
    } else if (cfg.contains("out_dir") && cfg["out_dir"].is_string()) {
        dir = cfg["out_dir"].get<std::string>();
    }
    cfg["out_dir"] = dir;
    return dir;
}

// Fills "outputs" entries that are still unset with paths under out_dir.
void default_output(Json& cfg, const char* key, const std::optional<std::string>& flag, const std::string& out_dir,
                    const char* file) {
    Json& o = cfg["outputs"];
    if (flag) {
        o[key] = *flag;
    } else if (!o.contains(key) || o[key].is_null()) {
        o[key] = file ? Json(out_path(out_dir, file)) : Json(nullptr);
    }
}

// ---------------------------------------------------------------------------

struct ClusterFlags {
    CommonFlags common;
    std::optional<std::string> state, dot, topology_out;
};

int run_cluster(const ClusterFlags& f) {
    Json cfg = source_defaults();
    overlay(cfg, load_config(f.common.config_path));
    apply_common(cfg, f.common);
    const std::string out_dir = resolve_out_dir(f.common, cfg);
    default_output(cfg, "state", f.state, out_dir, "state.json");
    default_output(cfg, "dot", f.dot, out_dir, nullptr);
    default_output(cfg, "topology", f.topology_out, out_dir, nullptr);
    const Seed seed = resolve_seed(cfg);
    const Topology t = load_source(cfg, seed);
    const WeightConfig wcfg = io::weight_config_from_json(cfg["weights"]);
    const ClusteringState st = settle(t, wcfg, cfg["max_rounds"].get<int>());
    if (!st.settled) std::cerr << "warning: clustering did not settle within " << st.rounds << " rounds\n";

    ensure_dir(out_dir);
    const Json& o = cfg["outputs"];
    io::write_file(o["state"].get<std::string>(), io::dump(io::state_to_json(st)));
    if (!o["dot"].is_null()) io::write_file(o["dot"].get<std::string>(), io::state_to_dot(t, st));
    if (!o["topology"].is_null()) io::write_file(o["topology"].get<std::string>(), io::dump(io::topology_to_json(t)));
    write_manifest("cluster", f.common, out_dir, cfg);
    std::cout << "clusterheads=" << st.count(Role::Clusterhead) << " subheads=" << st.count(Role::SubHead)
              << " slaves=" << st.count(Role::Slave) << " rounds=" << st.rounds << '\n';
    return 0;
}

struct CompareFlags {
    CommonFlags common;
    std::optional<std::string> report, dot_waca, dot_wca;
    std::optional<double> c[4];
    std::optional<int> wca_ideal_degree;
};

int run_compare(const CompareFlags& f) {
    Json cfg = source_defaults();
    cfg["wca"] = io::wca_config_to_json(WcaConfig{});
    overlay(cfg, load_config(f.common.config_path));
    apply_common(cfg, f.common);
    const char* keys[4] = {"c1", "c2", "c3", "c4"};
    for (int k = 0; k < 4; ++k)
        if (f.c[k]) cfg["wca"][keys[k]] = *f.c[k];
    // WCA's delta follows dd_I unless set explicitly.
    if (f.wca_ideal_degree) {
        cfg["wca"]["ideal_degree"] = *f.wca_ideal_degree;
    } else if (f.common.ideal_degree) {
        cfg["wca"]["ideal_degree"] = *f.common.ideal_degree;
    }
    const std::string out_dir = resolve_out_dir(f.common, cfg);
    default_output(cfg, "report", f.report, out_dir, "compare.json");
    default_output(cfg, "dot_waca", f.dot_waca, out_dir, nullptr);
    default_output(cfg, "dot_wca", f.dot_wca, out_dir, nullptr);
    const Seed seed = resolve_seed(cfg);
    const Topology t = load_source(cfg, seed);
    const ClusteringState st = settle(t, io::weight_config_from_json(cfg["weights"]), cfg["max_rounds"].get<int>());
    const WcaResult wca = wca_elect(t, io::wca_config_from_json(cfg["wca"]));

    Json report = {{"summary",
                    {{"nodes", t.size()},
                     {"waca_heads", st.count(Role::Clusterhead)},
                     {"waca_subheads", st.count(Role::SubHead)},
                     {"wca_heads", wca.head_count()},
                     {"waca_settled", st.settled}}},
                   {"waca", io::state_to_json(st)},
                   {"wca", io::wca_to_json(t, wca)}};
    ensure_dir(out_dir);
    const Json& o = cfg["outputs"];
    io::write_file(o["report"].get<std::string>(), io::dump(report));
    if (!o["dot_waca"].is_null()) io::write_file(o["dot_waca"].get<std::string>(), io::state_to_dot(t, st));
    if (!o["dot_wca"].is_null()) io::write_file(o["dot_wca"].get<std::string>(), io::wca_to_dot(t, wca));
    write_manifest("compare", f.common, out_dir, cfg);
    std::cout << "waca_heads=" << st.count(Role::Clusterhead) << " waca_subheads=" << st.count(Role::SubHead)
              << " wca_heads=" << wca.head_count() << '\n';
    return 0;
}

struct ExperimentFlags {
    CommonFlags common;
    std::vector<int> n;
    std::vector<double> ranges;
    std::optional<int> runs;
    std::optional<double> side;
    std::optional<int> parallel;
    std::optional<std::string> rows, aggregate, trends;
};

int run_experiment(const ExperimentFlags& f) {
    Json cfg = io::sweep_config_to_json(SweepConfig{});
    cfg.erase("base_seed");
    cfg["seed"] = nullptr;
    cfg["parallel"] = 1;
    const Json file = load_config(f.common.config_path);
    overlay(cfg, file);
    if (file.contains("base_seed")) cfg["seed"] = file["base_seed"];
    cfg.erase("base_seed");
    apply_common(cfg, f.common);
    if (!f.n.empty()) cfg["node_counts"] = f.n;
    if (!f.ranges.empty()) cfg["ranges"] = f.ranges;
    if (f.runs) cfg["runs"] = *f.runs;
    if (f.side) cfg["side"] = *f.side;
    if (f.parallel) cfg["parallel"] = *f.parallel;
    if (f.common.ideal_degree) cfg["wca"]["ideal_degree"] = *f.common.ideal_degree;
    const std::string out_dir = resolve_out_dir(f.common, cfg);
    default_output(cfg, "rows", f.rows, out_dir, "rows.csv");
    default_output(cfg, "aggregate", f.aggregate, out_dir, "aggregate.csv");
    default_output(cfg, "trends", f.trends, out_dir, "trends.json");
    const Seed seed = resolve_seed(cfg);

    Json sweep_json = cfg;
    sweep_json["base_seed"] = seed;
    SweepConfig sweep = io::sweep_config_from_json(sweep_json);
    sweep.validate();
    const int threads = cfg["parallel"].get<int>();
    if (threads < 1) throw UsageError("--parallel must be >= 1");

    const auto rows = run_sweep(sweep, threads);
    const auto agg = aggregate(rows);
    const auto trends = trend_checks(agg);
    ensure_dir(out_dir);
    const Json& o = cfg["outputs"];
    io::write_file(o["rows"].get<std::string>(), rows_csv(sweep, rows));
    io::write_file(o["aggregate"].get<std::string>(), aggregate_csv(sweep, agg));
    io::write_file(o["trends"].get<std::string>(), io::dump(io::trends_to_json(trends)));
    write_manifest("experiment", f.common, out_dir, cfg);
    std::size_t unsettled = 0;
    for (const auto& r : rows) unsettled += r.settled ? 0 : 1;
    std::cout << "rows=" << rows.size() << " cells_unsettled=" << unsettled << '\n';
    return 0;
}

struct DisseminateFlags {
    CommonFlags common;
    std::optional<std::string> state_in, report, trace;
    std::vector<NodeId> interested;
    std::optional<int> chunks, uplink_rate, adhoc_rate, max_ips;
    bool relay_all = false;
};

int run_disseminate(const DisseminateFlags& f) {
    Json cfg = source_defaults();
    cfg["job"] = {{"chunks", 1},        {"interested", Json::array()}, {"uplink_rate", 1},
                  {"adhoc_rate", 1},    {"max_injection_points", 0},   {"relay_all", false}};
    cfg["state_file"] = nullptr;
    overlay(cfg, load_config(f.common.config_path));
    apply_common(cfg, f.common);
    Json& job_json = cfg["job"];
    if (!f.interested.empty()) job_json["interested"] = f.interested;
    if (f.chunks) job_json["chunks"] = *f.chunks;
    if (f.uplink_rate) job_json["uplink_rate"] = *f.uplink_rate;
    if (f.adhoc_rate) job_json["adhoc_rate"] = *f.adhoc_rate;
    if (f.max_ips) job_json["max_injection_points"] = *f.max_ips;
    if (f.relay_all) job_json["relay_all"] = true;
    if (f.state_in) cfg["state_file"] = *f.state_in;
    const std::string out_dir = resolve_out_dir(f.common, cfg);
    default_output(cfg, "report", f.report, out_dir, "dissemination.json");
    default_output(cfg, "trace", f.trace, out_dir, nullptr);

    ContentJob job;
    job.chunk_count = job_json["chunks"].get<int>();
    job.interested = job_json["interested"].get<std::vector<NodeId>>();
    job.uplink_rate = job_json["uplink_rate"].get<int>();
    job.adhoc_rate = job_json["adhoc_rate"].get<int>();
    job.max_injection_points = job_json["max_injection_points"].get<int>();
    job.relay_all = job_json["relay_all"].get<bool>();
    if (job.interested.empty()) throw UsageError("interested set is empty (use --interested)");
    try {
        job.validate();
    } catch (const ConfigError& e) {
        throw UsageError(e.what());
    }

    const Seed seed = resolve_seed(cfg);
    const Topology t = load_source(cfg, seed);
    ClusteringState st;
    if (!cfg["state_file"].is_null()) {
        const auto path = cfg["state_file"].get<std::string>();
        try {
            st = io::parse_state(io::read_file(path));
        } catch (const ParseError& e) {
            throw ParseError(path + ": " + e.what());
        }
        for (const auto& nd : t.nodes())
            if (st.find(nd.id) == nullptr) throw ParseError(path + ": no state for node " + std::to_string(nd.id));
    } else {
        st = settle(t, io::weight_config_from_json(cfg["weights"]), cfg["max_rounds"].get<int>());
    }

    std::vector<TraceEvent> trace;
    const bool want_trace = !cfg["outputs"]["trace"].is_null();
    const auto rep = disseminate(t, st, job, derive_seed(seed, {3}), want_trace ? &trace : nullptr);
    ensure_dir(out_dir);
    io::write_file(cfg["outputs"]["report"].get<std::string>(), io::dump(io::report_to_json(rep)));
    if (want_trace) io::write_file(cfg["outputs"]["trace"].get<std::string>(), io::trace_to_jsonl(trace));
    write_manifest("disseminate", f.common, out_dir, cfg);
    if (!rep.unreachable.empty()) {
        std::cerr << "warning: " << rep.unreachable.size() << " interested device(s) unreachable:";
        for (auto id : rep.unreachable) std::cerr << ' ' << id;
        std::cerr << '\n';
    }
    std::cout << "rounds=" << rep.rounds << " uplink=" << rep.uplink_transmissions
              << " adhoc=" << rep.adhoc_transmissions << " injection_points=" << rep.injection_points.size() << '\n';
    return 0;
}

struct EventsFlags {
    CommonFlags common;
    std::optional<std::string> script, timeline;
    std::optional<int> random_events;
    bool verify = false;
};

int run_events(const EventsFlags& f) {
    Json cfg = source_defaults();
    cfg["script"] = nullptr;
    cfg["random_events"] = 0;
    cfg["verify"] = false;
    overlay(cfg, load_config(f.common.config_path));
    apply_common(cfg, f.common);
    if (f.script) cfg["script"] = *f.script;
    if (f.random_events) cfg["random_events"] = *f.random_events;
    if (f.verify) cfg["verify"] = true;
    const std::string out_dir = resolve_out_dir(f.common, cfg);
    default_output(cfg, "timeline", f.timeline, out_dir, "timeline.json");
    const Seed seed = resolve_seed(cfg);
    const Topology t0 = load_source(cfg, seed);
    const WeightConfig wcfg = io::weight_config_from_json(cfg["weights"]);
    const int max_rounds = cfg["max_rounds"].get<int>();
    const bool verify = cfg["verify"].get<bool>();

    std::vector<TopologyEvent> events;
    if (!cfg["script"].is_null()) {
        const auto path = cfg["script"].get<std::string>();
        try {
            events = io::parse_events(io::read_file(path));
        } catch (const ParseError& e) {
            throw ParseError(path + ": " + e.what());
        }
    }
    const int extra = cfg["random_events"].get<int>();
    if (extra < 0) throw UsageError("--random-events must be >= 0");
    if (extra > 0) {
        Topology end = t0;
        for (const auto& ev : events) end = apply_to_topology(end, ev);
        const auto more = random_events(end, static_cast<std::size_t>(extra), derive_seed(seed, {4}));
        events.insert(events.end(), more.begin(), more.end());
    }

    Topology t = t0;
    ClusteringState st = settle(t, wcfg, max_rounds);
    Json timeline = Json::array();
    timeline.push_back({{"step", 0}, {"event", nullptr}, {"clusterheads", st.count(Role::Clusterhead)},
                        {"state", io::state_to_json(st)}});
    std::size_t mismatches = 0;
    for (std::size_t k = 0; k < events.size(); ++k) {
        EventOutcome out;
        try {
            out = apply_event(st, t, events[k], wcfg, max_rounds);
        } catch (const LookupError& e) {
            throw ParseError(std::string("event ") + std::to_string(k + 1) + ": " + e.what());
        } catch (const ConfigError& e) {
            throw ParseError(std::string("event ") + std::to_string(k + 1) + ": " + e.what());
        }
        Json entry = {{"step", k + 1},
                      {"event", io::event_to_json(events[k])},
                      {"clusterheads", out.state.count(Role::Clusterhead)},
                      {"weights_recomputed", out.weights_recomputed},
                      {"state", io::state_to_json(out.state)}};
        if (verify) {
            const bool ok = settle_from(out.topology, st, wcfg, max_rounds) == out.state;
            entry["verified"] = ok;
            if (!ok) ++mismatches;
        }
        timeline.push_back(std::move(entry));
        t = std::move(out.topology);
        st = std::move(out.state);
    }
    ensure_dir(out_dir);
    io::write_file(cfg["outputs"]["timeline"].get<std::string>(), io::dump({{"timeline", std::move(timeline)}}));
    write_manifest("events", f.common, out_dir, cfg);
    std::cout << "events=" << events.size() << " clusterheads=" << st.count(Role::Clusterhead);
    if (verify) std::cout << " mismatches=" << mismatches;
    std::cout << '\n';
    if (mismatches > 0) {
        std::cerr << "error: incremental state diverged from full recomputation\n";
        return kExitInternal;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weighted clusterhead election and content dissemination simulator"};
    app.require_subcommand(1);

    ClusterFlags cluster;
    auto* c = app.add_subcommand("cluster", "Settle WACA and write the clustering state");
    add_common(c, cluster.common);
    c->add_option("--state", cluster.state, "State JSON output path");
    c->add_option("--dot", cluster.dot, "DOT output path");
    c->add_option("--topology-out", cluster.topology_out, "Write the topology used");

    CompareFlags compare;
    auto* cmp = app.add_subcommand("compare", "Compare WACA and WCA clusterheads on one topology");
    add_common(cmp, compare.common);
    cmp->add_option("--report", compare.report, "Comparison JSON output path");
    cmp->add_option("--dot-waca", compare.dot_waca, "WACA DOT output path");
    cmp->add_option("--dot-wca", compare.dot_wca, "WCA DOT output path");
    cmp->add_option("--c1", compare.c[0], "WCA degree-difference factor");
    cmp->add_option("--c2", compare.c[1], "WCA distance-sum factor");
    cmp->add_option("--c3", compare.c[2], "WCA mobility factor");
    cmp->add_option("--c4", compare.c[3], "WCA service-time factor");
    cmp->add_option("--wca-ideal-degree", compare.wca_ideal_degree, "WCA ideal degree (default: --ideal-degree)");

    ExperimentFlags experiment;
    auto* ex = app.add_subcommand("experiment", "Run the range/size sweep");
    add_common(ex, experiment.common, false);
    ex->add_option("--n", experiment.n, "Node counts")->delimiter(',');
    ex->add_option("--range", experiment.ranges, "Transmission ranges")->delimiter(',');
    ex->add_option("--runs", experiment.runs, "Runs per cell");
    ex->add_option("--side", experiment.side, "Deployment square side");
    ex->add_option("--parallel", experiment.parallel, "Worker threads");
    ex->add_option("--rows", experiment.rows, "Per-run CSV path");
    ex->add_option("--aggregate", experiment.aggregate, "Aggregate CSV path");
    ex->add_option("--trends", experiment.trends, "Trend report JSON path");

    DisseminateFlags dis;
    auto* ds = app.add_subcommand("disseminate", "Distribute a chunked file over the clustering");
    add_common(ds, dis.common);
    ds->add_option("--state", dis.state_in, "Use this clustering state instead of settling");
    ds->add_option("--interested", dis.interested, "Interested node ids")->delimiter(',');
    ds->add_option("--chunks", dis.chunks, "Number of chunks");
    ds->add_option("--uplink-rate", dis.uplink_rate, "Chunks per injection point per round");
    ds->add_option("--adhoc-rate", dis.adhoc_rate, "Transmissions per device per round");
    ds->add_option("--max-injection-points", dis.max_ips, "Injection points per partition (0 = all)");
    ds->add_flag("--relay-all", dis.relay_all, "Every device relays");
    ds->add_option("--report", dis.report, "Report JSON output path");
    ds->add_option("--trace", dis.trace, "Per-round trace (JSON lines) output path");

    EventsFlags ev;
    auto* es = app.add_subcommand("events", "Apply a topology event script with incremental re-election");
    add_common(es, ev.common);
    es->add_option("--script", ev.script, "Line-delimited JSON events");
    es->add_option("--random-events", ev.random_events, "Append this many random events");
    es->add_flag("--verify", ev.verify, "Check each step against full recomputation");
    es->add_option("--timeline", ev.timeline, "Timeline JSON output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (c->parsed()) return run_cluster(cluster);
        if (cmp->parsed()) return run_compare(compare);
        if (ex->parsed()) return run_experiment(experiment);
        if (ds->parsed()) return run_disseminate(dis);
        if (es->parsed()) return run_events(ev);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitParse;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitUsage;
}
