#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "epic/engine.hpp"

namespace epic {

inline constexpr const char* kToolVersion = "0.1.0";

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;
inline constexpr int kExitValidation = 3;

/// Runs the configured trials and writes ticks.csv, summary.csv and
/// manifest.txt under out_dir; prints the summary table to `out`.
int cmd_run(const ScenarioConfig& config, const std::string& out_dir, std::ostream& out,
            std::ostream& err);

/// Sweeps one parameter ("t-up" or "jitter") over the given values for both
/// schemes and writes sweep.csv plus manifest.txt.
int cmd_sweep(const ScenarioConfig& config, const std::string& parameter,
              const std::vector<double>& values, const std::string& out_dir,
              std::ostream& out, std::ostream& err);

/// Built-in invariant suite: channel monotonicity, damping-operator oracle,
/// guardrail feasibility and the determinism hash. Prints one line per check.
int cmd_validate(const ScenarioConfig& config, std::ostream& out, std::ostream& err);

}  // namespace epic
