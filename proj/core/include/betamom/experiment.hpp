#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "betamom/objective.hpp"
#include "betamom/phase.hpp"
#include "betamom/types.hpp"

namespace betamom {

// Malformed or unusable configuration; the CLI maps this to a usage error.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ObjectiveKind { quadratic, logsumexp };

struct ObjectiveSpec {
    ObjectiveKind kind = ObjectiveKind::quadratic;
    std::vector<double> eigenvalues;  // quadratic
    std::vector<double> x_star;       // quadratic
    int dimension = 0;                // logsumexp
    double mu = 1.0;                  // logsumexp
    std::uint64_t seed = 0;           // logsumexp
};

Objective build_objective(const ObjectiveSpec& spec);

enum class CheckKind { energy_decrement, continuous_bound, deviation_ladder, phase_sweep };

struct ExperimentConfig {
    ObjectiveSpec objective;
    std::vector<double> x0;
    std::vector<double> betas;
    std::vector<double> steps;   // s values; config may instead give c with s = 1/(cL)
    int max_iter = 500;
    double grad_tol = 0.0;
    double t_end = 40.0;         // horizon of continuous checks
    double deviation_t = 5.0;    // horizon of the deviation metric
    std::vector<CheckKind> checks;
    std::string output_dir = "out";
    std::uint64_t seed = 0;
};

/// Parses the JSON config format documented in the README. Throws ConfigError
/// with a human-readable message on malformed input (including an empty
/// method grid).
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig parse_config(const std::string& json_text);

enum class CellStatus { pass, fail, advisory, invalid, diverged };

struct CellOutcome {
    std::string check;
    double beta = 0.0;
    double step = 0.0;
    CellStatus status = CellStatus::pass;
    double worst_margin = 0.0;  // most adverse inequality margin (sign convention: <0 fails)
    std::string detail;
};

struct ExperimentResult {
    std::vector<CellOutcome> outcomes;
    std::vector<std::string> artifacts;  // paths written, relative to output_dir
    int binding_failures = 0;

    int exit_status() const { return binding_failures > 0 ? 1 : 0; }
};

/// Runs every requested check on every (beta, s) cell, writes one CSV per
/// artifact plus `summary.txt`, and reports pass/fail per inequality. Invalid
/// cells are reported, never silently dropped. Deterministic: identical config
/// and seed produce byte-identical artifacts on one platform.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Phase-diagram sweep over (mu/L, c, beta) grids; one CSV row per cell with
/// header `mu_over_L,c,beta,h,ratio,regime,beta_c,in_window`.
void sweep_phase(const std::vector<double>& mu_over_l_grid,
                 const std::vector<double>& c_grid,
                 const std::vector<double>& beta_grid, std::ostream& os);

/// Writes self-contained plot scripts next to the CSVs found in artifact_dir.
/// Missing inputs skip the corresponding script with a notice on `notices`.
/// Returns the number of scripts written.
int emit_plots(const std::filesystem::path& artifact_dir, std::ostream& notices);

void write_summary(const ExperimentResult& result, std::ostream& os);

}  // namespace betamom
