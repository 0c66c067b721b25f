#pragma once

#include <vector>

#include "epic/kinematics.hpp"
#include "epic/rng.hpp"
#include "epic/signaling.hpp"

namespace epic {

enum class Scheme { kEpic, kTraditional };

/// Semantic state buffer cell for one peer: the last received state, the
/// guardrail reference velocity, the AoI and the current projected belief.
struct BeliefEntry {
    AgentState anchor_state;      // last received peer state
    Vec3 anchor_velocity_prev;    // previous belief velocity, guardrail reference
    AoiCounter aoi;
    AgentState belief;            // current projected state
};

/// Inference-operator parameters.
struct StsiParams {
    double alpha{1.0};                  // semantic damping factor, in (0, 1]
    double dt{1.0};                     // coordination step, s
    KinematicLimits limits;
    double tau_stsi_ms{9.73};           // simulated execution heartbeat
    double tau_stsi_jitter_ms{0.02};    // simulated hardware jitter
    bool spatial_consistency{false};    // optional pairwise-separation pass
    double d_safe_m{5.0};
};

/// Damped velocity projection: alpha^aoi * anchor velocity.
Vec3 project_velocity(const Vec3& anchor_v, int aoi, double alpha);

/// Damped position projection, closed form of the geometric series
/// p + sum_{m=1..aoi} alpha^m * v * dt.
Vec3 project_position(const Vec3& anchor_p, const Vec3& anchor_v, int aoi, double alpha,
                      double dt);

/// One inference pass over a stale entry (aoi >= 1): damped projection from
/// the anchor, velocity guardrail against the previous belief velocity,
/// position clamped to the mission volume. The guardrail reference advances
/// to the returned velocity.
BeliefEntry stsi_infer(const BeliefEntry& entry, const StsiParams& params);

/// Fresh-packet branch: anchor and belief snap to the received state, AoI
/// resets, guardrail reference becomes the received velocity.
BeliefEntry apply_packet(const BeliefEntry& entry, const AgentState& fresh, int step);

/// Zero-order hold: the traditional comparator perceives the raw anchor.
AgentState reactive_estimate(const BeliefEntry& entry);

/// Reaction-latency model. EPIC draws from the local execution-jitter
/// distribution and takes no link-state input; the traditional scheme's
/// reaction is a fresh link-latency draw.
double sample_reaction_latency_ms(Scheme scheme, const StsiParams& params,
                                  const LinkParams& link, Rng& rng);

/// Optional pairwise-separation adjustment: belief pairs closer than d_safe
/// are displaced apart symmetrically along the connecting line. Off by
/// default; positions only.
void spatial_consistency_adjust(std::vector<BeliefEntry>& entries, double d_safe_m);

}  // namespace epic
