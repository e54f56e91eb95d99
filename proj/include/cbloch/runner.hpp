#pragma once

#include "cbloch/observables.hpp"
#include "cbloch/scenario.hpp"
#include "cbloch/trajectory.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace cbloch {

inline constexpr const char* kTrajectorySchema = "cbloch.trajectory/1";
inline constexpr const char* kSnapshotSchema = "cbloch.snapshots/1";
inline constexpr const char* kSweepSchema = "cbloch.sweep/1";
inline constexpr const char* kSummarySchema = "cbloch.summary/1";

std::string_view code_version();

struct RunOptions {
    std::filesystem::path out_dir = ".";
    std::size_t workers = 1;
};

// Engine output of a scenario without any I/O.
struct Simulation {
    Lattice1D lattice; // x window (for plane runs: n_x and origin_x)
    Trajectory trajectory;
};

Simulation simulate(const Scenario& scenario, std::size_t workers = 1);

// Model predictions for a parameter set as a JSON object: omega, omega_cr,
// regime, drift velocity, ratio and ballistic rate where defined.
nlohmann::json predictions(const ModelParams& params);

// Predictions, fits and run metadata of a finished simulation.
nlohmann::json summarize(const Scenario& scenario, const Simulation& sim);

// Horizon warnings for rational ratios whose asymptotic regime needs longer
// runs: t_end < 10 (omega / j_y)^nu T_J.
std::vector<std::string> horizon_warnings(const Scenario& scenario);

struct RunResult {
    Simulation simulation;
    nlohmann::json summary;
    std::vector<std::filesystem::path> files;
};

// Simulates and writes <name>_trajectory.csv, <name>_snapshots.csv and
// <name>_summary.json into out_dir as requested by scenario.outputs. Files
// written before a failure are removed.
RunResult run(const Scenario& scenario, const RunOptions& options = {});

struct SweepRow {
    double value = 0.0;
    double omega = 0.0;
    double ratio = 0.0;
    Regime regime = Regime::critical;
    double t_end = 0.0;
    double tunneling_period = 0.0;
    double sigma_final = 0.0;
    std::optional<FitResult> fit;
    std::optional<double> predicted_rate;
    std::string error;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::filesystem::path file;
};

// Computes every point (in parallel across `workers`) and writes
// <name>_sweep.csv with rows in axis order. A failing point is recorded in
// its row's error column and the sweep continues.
std::vector<SweepRow> compute_sweep(const Sweep& sweep, std::size_t workers = 1);
SweepResult run_sweep(const Sweep& sweep, const RunOptions& options = {});

// CSV writers, exposed for golden-file tests. Every number uses 17
// significant digits.
std::string trajectory_csv(const Scenario& scenario, const Trajectory& trajectory);
std::string snapshot_csv(const Scenario& scenario, const Trajectory& trajectory);
std::string sweep_csv(const Sweep& sweep, const std::vector<SweepRow>& rows);

} // namespace cbloch
