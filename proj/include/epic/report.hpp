#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "epic/engine.hpp"

namespace epic {

/// Serializes a double with 6 significant digits ("%.6g"); NaN prints "nan".
std::string csv_number(double v);

/// Mean / std-of-trial-means / pooled-sample std over a set of trials.
struct AggregateStats {
    double wce_mean{0.0};
    double wce_trialmean_std{0.0};
    double latency_mean_ms{0.0};
    double latency_trialmean_std_ms{0.0};
    double latency_pooled_std_ms{0.0};
    std::size_t latency_events{0};
};

AggregateStats aggregate_trials(const std::vector<TrialResult>& trials);

/// ticks.csv: trial,step,scheme,wce,reaction_latency_ms,max_aoi
std::string build_ticks_csv(const std::vector<TrialResult>& trials);

/// summary.csv: per-trial rows plus one aggregate row (trial = -1) whose
/// latency_std_ms column is the pooled per-sample std and whose
/// latency_trialmean_std_ms column is the std across trial means.
std::string build_summary_csv(const std::vector<TrialResult>& trials,
                              const ScenarioConfig& config);

/// sweep.csv: same statistics keyed by (parameter, value, scheme, trial).
std::string build_sweep_csv(const std::vector<SweepCell>& cells, const std::string& parameter,
                            const ScenarioConfig& config);

/// Human-readable tables; every numeral they contain also appears in the
/// corresponding CSV (same formatting).
std::string render_run_table(const std::vector<TrialResult>& trials,
                             const ScenarioConfig& config);
std::string render_sweep_table(const std::vector<SweepCell>& cells,
                               const std::string& parameter);

/// Manifest payload: commented metadata plus the full resolved config; the
/// file itself re-loads as a configuration.
std::string build_manifest(const ScenarioConfig& config, const std::string& tool_version,
                           const std::string& timestamp_utc,
                           const std::vector<std::string>& output_files);

std::uint64_t fnv1a_hash(const std::string& bytes);

}  // namespace epic
