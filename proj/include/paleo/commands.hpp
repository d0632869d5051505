#pragma once

#include "paleo/config.hpp"

namespace paleo::cli {

// Subcommand exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;       // input/config errors
inline constexpr int kExitDivergence = 3;  // SVI divergence
inline constexpr int kExitVerify = 4;      // verification check failed

/// Writes the synthetic dataset CSV to cfg.dataset_path and truth.json to
/// cfg.output_dir.
int cmd_simulate(const RunConfig& cfg);

/// Reads the dataset, fits by SVI, and writes fit.json, summary.json,
/// trajectory.csv, parameters.csv and elbo_trace.csv into cfg.output_dir.
/// Nothing is written unless the whole fit succeeds.
int cmd_fit(const RunConfig& cfg);

/// Renders trajectory.svg and densities.svg from the fit artifacts.
int cmd_report(const RunConfig& cfg);

/// Runs the verification oracles (gradient finite differences, SVI-vs-MCMC
/// agreement, coverage) and writes verify.json; quick = gradient suite only.
int cmd_verify(const RunConfig& cfg, bool quick);

}  // namespace paleo::cli
