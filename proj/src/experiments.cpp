#include "wacasim/experiments.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <string_view>

#include "wacasim/election.hpp"
#include "wacasim/errors.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace wacasim {

void SweepConfig::validate() const {
    if (!(side > 0.0) || !std::isfinite(side)) throw ConfigError("sweep: side must be positive");
    if (node_counts.empty() || ranges.empty()) throw ConfigError("sweep: node_counts and ranges must be non-empty");
    for (int n : node_counts)
        if (n < 1) throw ConfigError("sweep: node counts must be >= 1");
    for (double r : ranges)
        if (!(r > 0.0) || !std::isfinite(r)) throw ConfigError("sweep: ranges must be positive");
    if (runs < 1) throw ConfigError("sweep: runs must be >= 1");
    if (max_rounds < 1) throw ConfigError("sweep: max_rounds must be >= 1");
    weight_cfg.validate();
    wca_cfg.validate();
    power_model.validate();
    signal_model.validate();
}

std::vector<int> SweepConfig::sorted_node_counts() const {
    auto v = node_counts;
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::vector<double> SweepConfig::sorted_ranges() const {
    auto v = ranges;
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::size_t SweepConfig::cell_count() const {
    return sorted_node_counts().size() * sorted_ranges().size() * static_cast<std::size_t>(runs);
}

Topology cell_topology(const SweepConfig& cfg, int n, double range, int run) {
    const Seed seed = cell_seed(cfg.base_seed, static_cast<std::uint64_t>(n), range, static_cast<std::uint64_t>(run));
    Topology t = deploy_uniform(static_cast<std::size_t>(n), cfg.side, derive_seed(seed, {0}), range);
    t = assign_power(t, cfg.power_model, derive_seed(seed, {1}));
    return assign_signal(t, cfg.signal_model, derive_seed(seed, {2}));
}

ExperimentRow run_cell(const SweepConfig& cfg, int n, double range, int run) {
    const Topology t = cell_topology(cfg, n, range, run);
    const ClusteringState st = settle(t, cfg.weight_cfg, cfg.max_rounds);
    const WcaResult wca = wca_elect(t, cfg.wca_cfg);
    ExperimentRow row;
    row.n = n;
    row.range = range;
    row.run = run;
    row.waca_heads = static_cast<int>(st.count(Role::Clusterhead));
    row.waca_subheads = static_cast<int>(st.count(Role::SubHead));
    row.wca_heads = static_cast<int>(wca.head_count());
    row.settled = st.settled;
    row.settle_rounds = st.rounds;
    return row;
}

namespace {

struct Cell {
    int n;
    double range;
    int run;
};

std::vector<Cell> enumerate_cells(const SweepConfig& cfg) {
    std::vector<Cell> cells;
    cells.reserve(cfg.cell_count());
    for (int n : cfg.sorted_node_counts())
        for (double r : cfg.sorted_ranges())
            for (int run = 0; run < cfg.runs; ++run) cells.push_back({n, r, run});
    return cells;
}

}  // namespace

std::vector<ExperimentRow> run_sweep_serial(const SweepConfig& cfg) {
    cfg.validate();
    std::vector<ExperimentRow> rows;
    for (const auto& c : enumerate_cells(cfg)) rows.push_back(run_cell(cfg, c.n, c.range, c.run));
    return rows;
}

std::vector<ExperimentRow> run_sweep(const SweepConfig& cfg, int threads) {
    cfg.validate();
    const auto cells = enumerate_cells(cfg);
    std::vector<ExperimentRow> rows(cells.size());
    const auto count = static_cast<std::ptrdiff_t>(cells.size());
#if defined(_OPENMP)
    if (threads <= 0) threads = omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
#else
    (void)threads;
#endif
    for (std::ptrdiff_t k = 0; k < count; ++k) {
        const auto& c = cells[static_cast<std::size_t>(k)];
        rows[static_cast<std::size_t>(k)] = run_cell(cfg, c.n, c.range, c.run);
    }
    return rows;
}

namespace {

Stat stat_of(const std::vector<double>& v) {
    Stat s;
    if (v.empty()) return s;
    s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(v.size()));
    return s;
}

std::vector<double> average_ranks(const std::vector<double>& v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> rank(v.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
        const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) rank[order[k]] = avg;
        i = j + 1;
    }
    return rank;
}

}  // namespace

std::vector<AggregateRow> aggregate(const std::vector<ExperimentRow>& rows) {
    std::vector<const ExperimentRow*> sorted;
    sorted.reserve(rows.size());
    for (const auto& r : rows) sorted.push_back(&r);
    std::stable_sort(sorted.begin(), sorted.end(), [](const ExperimentRow* a, const ExperimentRow* b) {
        return a->n != b->n ? a->n < b->n : a->range < b->range;
    });
    std::vector<AggregateRow> out;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        std::vector<double> heads, subs, wca;
        while (j < sorted.size() && sorted[j]->n == sorted[i]->n && sorted[j]->range == sorted[i]->range) {
            heads.push_back(sorted[j]->waca_heads);
            subs.push_back(sorted[j]->waca_subheads);
            wca.push_back(sorted[j]->wca_heads);
            ++j;
        }
        AggregateRow a;
        a.n = sorted[i]->n;
        a.range = sorted[i]->range;
        a.samples = j - i;
        a.waca_heads = stat_of(heads);
        a.waca_subheads = stat_of(subs);
        a.wca_heads = stat_of(wca);
        out.push_back(a);
        i = j;
    }
    return out;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) return 0.0;
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

TrendReport trend_checks(const std::vector<AggregateRow>& aggregates) {
    TrendReport rep;
    for (std::size_t i = 0; i < aggregates.size();) {
        std::size_t j = i;
        std::vector<double> ranges, heads, subs, wca;
        while (j < aggregates.size() && aggregates[j].n == aggregates[i].n) {
            ranges.push_back(aggregates[j].range);
            heads.push_back(aggregates[j].waca_heads.mean);
            subs.push_back(aggregates[j].waca_subheads.mean);
            wca.push_back(aggregates[j].wca_heads.mean);
            ++j;
        }
        TrendReport::PerN p;
        p.n = aggregates[i].n;
        p.range_points = ranges.size();
        p.heads_range_correlation = spearman(ranges, heads);
        for (std::size_t k = 0; k < ranges.size(); ++k)
            if (heads[k] <= wca[k]) ++p.waca_le_wca_points;
        p.waca_le_wca_fraction = static_cast<double>(p.waca_le_wca_points) / static_cast<double>(ranges.size());
        p.waca_heads_avg = std::accumulate(heads.begin(), heads.end(), 0.0) / static_cast<double>(heads.size());
        p.wca_heads_avg = std::accumulate(wca.begin(), wca.end(), 0.0) / static_cast<double>(wca.size());
        std::size_t peak = 0;
        for (std::size_t k = 1; k < subs.size(); ++k)
            if (subs[k] > subs[peak]) peak = k;
        p.subhead_peak_range = ranges[peak];
        p.subhead_peak = subs[peak];
        p.subheads_first = subs.front();
        p.subheads_last = subs.back();
        p.heads_first = heads.front();
        p.heads_last = heads.back();
        rep.per_n.push_back(p);
        i = j;
    }
    return rep;
}

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    // Values that round to zero print without a sign.
    if (std::string_view(buf) == "-0.000000") return "0.000000";
    return buf;
}

namespace {

template <typename T>
std::string join(const std::vector<T>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ';';
        if constexpr (std::is_floating_point_v<T>) {
            s += format_real(v[i]);
        } else {
            s += std::to_string(v[i]);
        }
    }
    return s;
}

std::string describe(const PowerModel& m) {
    if (m.kind == PowerModel::Kind::Constant) return "constant(" + format_real(m.value) + ")";
    return "uniform(" + format_real(m.lo) + "," + format_real(m.hi) + ")";
}

std::string describe(const SignalModel& m) {
    switch (m.kind) {
    case SignalModel::Kind::Constant: return "constant(" + format_real(m.value) + ")";
    case SignalModel::Kind::UniformRandom: return "uniform(0,1)";
    case SignalModel::Kind::BaseStations: {
        std::string s = "base_stations(range=" + format_real(m.station_range);
        for (const auto& p : m.stations) s += ";" + format_real(p.x) + ":" + format_real(p.y);
        return s + ")";
    }
    }
    return "?";
}

std::string echo_block(const SweepConfig& cfg) {
    std::string s;
    for (const auto& [k, v] : config_echo(cfg)) s += "# " + k + "=" + v + "\n";
    return s;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> config_echo(const SweepConfig& cfg) {
    const auto& w = cfg.weight_cfg;
    const auto& c = cfg.wca_cfg;
    return {
        {"side", format_real(cfg.side)},
        {"node_counts", join(cfg.sorted_node_counts())},
        {"ranges", join(cfg.sorted_ranges())},
        {"runs", std::to_string(cfg.runs)},
        {"base_seed", std::to_string(cfg.base_seed)},
        {"max_rounds", std::to_string(cfg.max_rounds)},
        {"wf1", format_real(w.wf_power)},
        {"wf2", format_real(w.wf_signal)},
        {"wf3", format_real(w.wf_clustering)},
        {"wf4", format_real(w.wf_degree)},
        {"wf5", format_real(w.wf_stability)},
        {"ideal_degree", std::to_string(w.ideal_degree)},
        {"log_base", format_real(w.log_base)},
        {"pa_floor", format_real(w.pa_floor)},
        {"wca_c1", format_real(c.c_degree)},
        {"wca_c2", format_real(c.c_distance)},
        {"wca_c3", format_real(c.c_mobility)},
        {"wca_c4", format_real(c.c_service_time)},
        {"wca_ideal_degree", std::to_string(c.ideal_degree)},
        {"power_model", describe(cfg.power_model)},
        {"signal_model", describe(cfg.signal_model)},
        {"rng", "mt19937_64+splitmix64"},
    };
}

std::string rows_csv(const SweepConfig& cfg, const std::vector<ExperimentRow>& rows) {
    std::string s = echo_block(cfg);
    s += "n,range,run,waca_heads,waca_subheads,wca_heads,settled,settle_rounds\n";
    for (const auto& r : rows) {
        s += std::to_string(r.n) + ',' + format_real(r.range) + ',' + std::to_string(r.run) + ',' +
             std::to_string(r.waca_heads) + ',' + std::to_string(r.waca_subheads) + ',' +
             std::to_string(r.wca_heads) + ',' + (r.settled ? "1" : "0") + ',' + std::to_string(r.settle_rounds) +
             '\n';
    }
    return s;
}

std::string aggregate_csv(const SweepConfig& cfg, const std::vector<AggregateRow>& aggregates) {
    std::string s = echo_block(cfg);
    s += "n,range,waca_heads_mean,waca_heads_sd,waca_subheads_mean,waca_subheads_sd,wca_heads_mean,wca_heads_sd\n";
    for (const auto& a : aggregates) {
        s += std::to_string(a.n) + ',' + format_real(a.range) + ',' + format_real(a.waca_heads.mean) + ',' +
             format_real(a.waca_heads.sd) + ',' + format_real(a.waca_subheads.mean) + ',' +
             format_real(a.waca_subheads.sd) + ',' + format_real(a.wca_heads.mean) + ',' +
             format_real(a.wca_heads.sd) + '\n';
    }
    return s;
}

}  // namespace wacasim
