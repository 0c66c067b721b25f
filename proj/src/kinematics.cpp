#include "epic/kinematics.hpp"

namespace epic {

Vec3 clamp_manifold(const Vec3& proposed_velocity, const Vec3& previous_velocity,
                    const KinematicLimits& limits) {
    Vec3 v = proposed_velocity;

    const double accel_radius = limits.a_max * limits.dt;
    const Vec3 delta = v - previous_velocity;
    const double delta_norm = delta.norm();
    if (delta_norm > accel_radius) {
        v = previous_velocity + delta * (accel_radius / delta_norm);
    }

    const double speed = v.norm();
    if (speed > limits.v_max) {
        v = v * (limits.v_max / speed);
    }
    return v;
}

AgentState integrate(const AgentState& state, const Vec3& commanded_velocity,
                     const KinematicLimits& limits) {
    AgentState next;
    next.velocity = clamp_manifold(commanded_velocity, state.velocity, limits);

    const Vec3 raw = state.position + next.velocity * limits.dt;
    next.position = clamp_to_box(raw, limits.volume);

    if (next.position.x != raw.x) next.velocity.x = 0.0;
    if (next.position.y != raw.y) next.velocity.y = 0.0;
    if (next.position.z != raw.z) next.velocity.z = 0.0;
    return next;
}

}  // namespace epic
