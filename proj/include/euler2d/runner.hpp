#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "euler2d/config.hpp"

namespace euler2d {

/// File contents produced by one experiment (written by the caller; keeping
/// them in memory makes reruns byte-comparable and lets sweeps merge tables).
struct ExperimentOutput {
    std::vector<std::pair<std::string, std::string>> files;  // name -> content
    std::string primary_csv;                                 // name of the sweep-mergeable table
    bool checks_passed = true;                               // lemma-suite style verdicts
};

/// Runs the experiment selected by cfg.experiment. Throws ConfigError /
/// BlowUpError / ConvergenceError for the structured failure classes.
ExperimentOutput run_experiment(const RunConfig& cfg);

/// Orchestrates a full CLI run: parse + validate config, run, write outputs
/// and manifest. Returns the process exit code (0 ok, 2 config error,
/// 3 blow-up, 4 convergence failure, 1 other).
int run_cli(const std::string& config_path, const std::string& out_dir,
            const std::string& experiment_override, int workers_override,
            std::optional<std::uint64_t> seed_override);

/// Sweep driver: one run per value along the axis (dt | N | M | eps), common
/// seed, merged long-format table with provenance columns.
int run_sweep_cli(const std::string& config_path, const std::string& out_dir,
                  const std::string& axis, const std::vector<std::string>& values,
                  const std::string& experiment_override, int workers_override,
                  std::optional<std::uint64_t> seed_override);

}  // namespace euler2d
