#pragma once

#include <vector>

#include "epic/channel.hpp"
#include "epic/kinematics.hpp"

namespace epic {

/// One hover waypoint per agent, indexed by agent.
struct Assignment {
    std::vector<Vec3> waypoints;
    std::vector<std::size_t> target_index;  // which target each waypoint sits above
};

/// Static per-scenario state of the assignment policy: the candidate hover
/// points (one above each target) and their precomputed received powers at
/// every target. Targets do not move, so this is built once per trial.
struct AssignmentContext {
    AssignmentContext(const std::vector<Target>& targets, const ChannelParams& params,
                      double altitude_m);

    std::vector<Target> targets;
    ChannelParams params;
    double altitude_m{0.0};
    std::vector<Vec3> candidates;
    std::vector<double> cand_power_mw;  // [candidate * n_targets + target]
    double noise_mw{0.0};
    double sinr_lin_threshold{0.0};
};

/// Greedy marginal-gain coverage assignment. Agents are processed in index
/// order; each is placed at the hover point (altitude_m above a target) that
/// maximizes predicted WCE given already-assigned agents at their waypoints
/// and not-yet-assigned agents at their believed positions. Ties break to the
/// lowest target index. Deterministic given inputs.
Assignment assign_targets(const AssignmentContext& context,
                          const std::vector<AgentState>& believed_states);

Assignment assign_targets(const std::vector<AgentState>& believed_states,
                          const std::vector<Target>& targets, const ChannelParams& params,
                          double altitude_m);

/// Proportional pursuit of a waypoint, saturated at v_max; zero inside a
/// 0.1 m deadband.
Vec3 velocity_command(const AgentState& self, const Vec3& waypoint,
                      const KinematicLimits& limits);

}  // namespace epic
