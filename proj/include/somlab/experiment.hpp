#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "somlab/analysis.hpp"
#include "somlab/config.hpp"

namespace somlab {

/// One analyzed training run; one CSV row.
struct RunRow {
    double lambda = 0.0;  // NaN for VQ
    int replicate = 0;
    std::optional<ExponentFit> fit;          // empty when the fit failed or does not apply
    std::string fit_error;                   // diagnostic when fit is empty
    double theoretical = 0.0;                // 2/(3+lambda); NaN outside the window or for VQ
    double firing_entropy_nats = 0.0;
    std::optional<std::uint64_t> ordering_step;
    std::uint64_t seed = 0;
};

struct SweepResult {
    std::vector<double> lambdas;
    std::vector<RunRow> rows;  // ordered by (lambda index, replicate)
};

/// Trains and analyzes one replicate with a fully derived seed.
RunRow run_replicate(const ExperimentConfig& config, double lambda, int lambda_index, int replicate);

/// Runs config.replicates replicates of the configured rule, writes
/// result.csv, per-replicate snapshot files, and meta.json under `out`.
/// Throws on analysis errors (exit code 3 at the CLI) unless every
/// replicate produced a row.
std::vector<RunRow> run_single(const ExperimentConfig& config, const std::filesystem::path& out);

/// Independent replicated GWRK runs per lambda; jobs > 1 executes them
/// concurrently. Rows are merged by (lambda, replicate) key, never by
/// completion order. Writes sweep.csv and sweep_summary.csv under `out`.
SweepResult run_sweep(const ExperimentConfig& config, const std::vector<double>& lambdas,
                      const std::filesystem::path& out, int jobs = 1);

struct PotentialCheckRow {
    int instance = 0;
    double margin = 0.0;
    double err_lambda_half = 0.0;  // gradient check against GWRK(1/2)
    double err_lambda_zero = 0.0;  // gradient check against SOM
    std::string note;
};

struct PotentialCheckReport {
    std::vector<PotentialCheckRow> rows;
    double discontinuity_ratio = 0.0;    // border-jump derivative mismatch / smooth FD error
    std::vector<double> kappa_values;    // kappa halving table
    std::vector<double> kappa_errors;    // |V_wrk - V_tsp| per kappa
    double kappa_scaling_exponent = 0.0;
};

/// Gradient-check table over the configured discrete instance plus 20
/// seeded random instances, the Voronoi-border discontinuity witness, and
/// the kappa-expansion truncation-error scaling study. Writes
/// potential_check.csv and a text report under `out`.
PotentialCheckReport run_potential_check(const ExperimentConfig& config, const std::filesystem::path& out);

struct SnapshotAnalysisRow {
    std::string file;
    std::uint64_t step = 0;
    int defects = 0;
    bool is_ordered = false;
    std::optional<ExponentFit> fit;
    std::string fit_error;
};

/// Re-runs the analysis over stored snapshot files (sorted by name);
/// writes analysis.csv under `out`.
std::vector<SnapshotAnalysisRow> analyze_snapshots(const ExperimentConfig& config,
                                                   const std::filesystem::path& snapshot_dir,
                                                   const std::filesystem::path& out);

/// CSV serialization used by the commands above (exposed for tests).
std::string rows_to_csv(const ExperimentConfig& config, const std::vector<RunRow>& rows);
std::string sweep_summary_csv(const ExperimentConfig& config, const SweepResult& sweep);

}  // namespace somlab
