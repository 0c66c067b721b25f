#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "epic/channel.hpp"
#include "epic/coordination.hpp"
#include "epic/kinematics.hpp"
#include "epic/signaling.hpp"
#include "epic/stsi.hpp"

namespace epic {

/// Full simulation configuration; defaults reproduce the dense-urban
/// reference scenario.
struct ScenarioConfig {
    int n_agents{6};
    int n_targets{30};
    int mission_steps{200};
    double step_dt_s{1.0};
    double inference_hz{100.0};
    double altitude_m{100.0};
    double volume_x_m{1800.0};
    double volume_y_m{1800.0};
    double volume_z_m{100.0};
    double v_max_mps{20.0};
    double a_max_mps2{10.0};
    ChannelParams channel;
    LinkParams link;
    double alpha{1.0};
    double tau_stsi_ms{9.73};
    double tau_stsi_jitter_ms{0.02};
    bool spatial_consistency{false};
    double d_safe_m{5.0};
    Scheme scheme{Scheme::kEpic};
    int trials{5};
    std::uint64_t master_seed{42};

    KinematicLimits make_limits() const;
    StsiParams make_stsi() const;
};

/// Throws std::invalid_argument naming the violated invariant.
void validate_config(const ScenarioConfig& config);

const char* scheme_name(Scheme scheme);

/// Per-step record.
struct TickMetrics {
    int step{0};
    double wce{0.0};
    std::vector<int> agent_max_aoi;     // per agent, max over its peer entries
    double reaction_latency_ms{0.0};    // mean over this step's decisions; NaN if none
    int decision_count{0};
    Scheme scheme{Scheme::kEpic};
};

/// Per-trial aggregate.
struct TrialSummary {
    int trial{0};
    Scheme scheme{Scheme::kEpic};
    std::uint64_t seed{0};
    double wce_mean{0.0};
    double wce_std{0.0};
    double latency_mean_ms{0.0};
    double latency_std_ms{0.0};  // per-sample std within the trial
    std::size_t latency_events{0};
    std::size_t packets_sent{0};
    std::size_t packets_delivered{0};
    std::size_t packets_pending{0};
};

struct TrialResult {
    TrialSummary summary;
    std::vector<TickMetrics> ticks;
    std::vector<double> latency_samples;
};

/// Mutable world of one trial.
struct World {
    ScenarioConfig cfg;
    KinematicLimits limits;
    StsiParams stsi;
    std::vector<AgentState> agents;
    std::vector<Target> targets;
    std::optional<AssignmentContext> assignment_ctx;  // targets are static
    // buffers[receiver][sender]; the self slot is unused.
    std::vector<std::vector<BeliefEntry>> buffers;
    PacketQueue queue;
    std::vector<Rng> link_rng;  // one stream per sender
    Rng epic_latency_rng;
    Rng trad_latency_rng;
    std::vector<Vec3> waypoints;
    std::vector<double> step_latency_samples;  // scratch, cleared per step
    std::vector<double> trial_latency_samples;
};

/// Places agents uniformly in the horizontal plane at mission altitude with
/// zero velocity and targets uniformly on the ground with integer weights in
/// {1..5}; peer buffers start from the shared mission briefing.
World init_scenario(const ScenarioConfig& config, std::uint64_t trial_seed);

/// Advances one coordination step: communication, AoI, inference, assignment,
/// physics, metrics.
TickMetrics run_step(World& world, int step);

TrialResult run_trial(const ScenarioConfig& config, int trial_index);

/// Runs all trials (independently seeded from the master seed, concurrently
/// where possible) and returns them ordered by trial index.
std::vector<TrialResult> run_trials(const ScenarioConfig& config);

enum class SweepParameter { kTUp, kJitterSigma };

struct SweepCell {
    double value{0.0};
    Scheme scheme{Scheme::kEpic};
    std::vector<TrialResult> trials;
};

/// Cross product of sweep values and both schemes with common-random-number
/// seeding; rows ordered by (value, scheme).
std::vector<SweepCell> sweep(const ScenarioConfig& config, SweepParameter parameter,
                             const std::vector<double>& values);

}  // namespace epic
