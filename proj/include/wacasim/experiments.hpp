#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wacasim/netmodel.hpp"
#include "wacasim/wca.hpp"
#include "wacasim/weights.hpp"

namespace wacasim {

struct SweepConfig {
    double side = 100.0;
    std::vector<int> node_counts = {20, 30, 40, 50, 60};
    std::vector<double> ranges = {10, 15, 20, 25, 30, 35, 40, 45, 50, 55, 60, 65, 70};
    int runs = 30;
    Seed base_seed = 1;
    WeightConfig weight_cfg;
    WcaConfig wca_cfg;
    PowerModel power_model = PowerModel::uniform(0.7, 4.0);
    SignalModel signal_model = SignalModel::uniform();
    int max_rounds = 32;

    void validate() const;
    /// Grid with duplicates removed and values ascending.
    std::vector<int> sorted_node_counts() const;
    std::vector<double> sorted_ranges() const;
    std::size_t cell_count() const;
};

struct ExperimentRow {
    int n = 0;
    double range = 0.0;
    int run = 0;
    int waca_heads = 0;
    int waca_subheads = 0;
    int wca_heads = 0;
    bool settled = false;
    int settle_rounds = 0;

    friend bool operator==(const ExperimentRow&, const ExperimentRow&) = default;
};

/// The deployment one sweep cell runs on: positions, power and signal all
/// drawn from substreams of cell_seed(base_seed, n, range, run).
Topology cell_topology(const SweepConfig& cfg, int n, double range, int run);

/// Runs WACA (settle) and WCA on the same topology instance.
ExperimentRow run_cell(const SweepConfig& cfg, int n, double range, int run);

/// Reference implementation: cells in grid order on the calling thread.
std::vector<ExperimentRow> run_sweep_serial(const SweepConfig& cfg);

/// Cells distributed over `threads` OpenMP threads (0: OpenMP default).
/// Output is identical to run_sweep_serial: rows sorted by (n, range, run).
std::vector<ExperimentRow> run_sweep(const SweepConfig& cfg, int threads = 0);

struct Stat {
    double mean = 0.0;
    double sd = 0.0;  ///< population standard deviation
};

struct AggregateRow {
    int n = 0;
    double range = 0.0;
    std::size_t samples = 0;
    Stat waca_heads;
    Stat waca_subheads;
    Stat wca_heads;
};

/// Mean and population SD per (n, range), ordered n asc then range asc.
std::vector<AggregateRow> aggregate(const std::vector<ExperimentRow>& rows);

/// Spearman rank correlation with average ranks for ties. 0 when either
/// series is constant or shorter than 2.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

struct TrendReport {
    struct PerN {
        int n = 0;
        double heads_range_correlation = 0.0;  ///< Spearman(range, mean WACA heads)
        double waca_le_wca_fraction = 0.0;     ///< share of ranges with WACA mean <= WCA mean
        std::size_t waca_le_wca_points = 0;
        std::size_t range_points = 0;
        double waca_heads_avg = 0.0;           ///< WACA means averaged over ranges
        double wca_heads_avg = 0.0;
        double subhead_peak_range = 0.0;       ///< argmax range of mean sub-heads, smallest on ties
        double subhead_peak = 0.0;
        double subheads_first = 0.0;           ///< at the smallest range
        double subheads_last = 0.0;            ///< at the largest range
        double heads_first = 0.0;
        double heads_last = 0.0;
    };
    std::vector<PerN> per_n;
};

TrendReport trend_checks(const std::vector<AggregateRow>& aggregates);

/// `# key=value` lines describing every resolved parameter of the sweep.
std::vector<std::pair<std::string, std::string>> config_echo(const SweepConfig& cfg);

std::string rows_csv(const SweepConfig& cfg, const std::vector<ExperimentRow>& rows);
std::string aggregate_csv(const SweepConfig& cfg, const std::vector<AggregateRow>& aggregates);

/// Fixed formatting shared by every CSV/echo writer.
std::string format_real(double v);

}  // namespace wacasim
