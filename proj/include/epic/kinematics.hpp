#pragma once

#include "epic/vec3.hpp"

namespace epic {

/// Position + velocity of one agent at a coordination step.
struct AgentState {
    Vec3 position;  // m
    Vec3 velocity;  // m/s
};

/// Physical envelope shared by real agents and inferred peer beliefs.
struct KinematicLimits {
    double v_max{20.0};    // m/s
    double a_max{10.0};    // m/s^2
    AaBox volume{{0.0, 0.0, 0.0}, {1800.0, 1800.0, 100.0}};
    double dt{1.0};        // s, integration / coordination step
};

/// Projects a proposed velocity into the feasible set: first onto the
/// acceleration ball of radius a_max*dt around the previous velocity, then
/// onto the speed ball of radius v_max. Identity on already-feasible input.
Vec3 clamp_manifold(const Vec3& proposed_velocity, const Vec3& previous_velocity,
                    const KinematicLimits& limits);

/// First-order motion update: velocity = clamp_manifold(command), position
/// advances by velocity*dt and is clamped to the mission volume. An axis whose
/// position clamp activates has its velocity component zeroed.
AgentState integrate(const AgentState& state, const Vec3& commanded_velocity,
                     const KinematicLimits& limits);

}  // namespace epic
