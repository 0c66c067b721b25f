#include "epic/stsi.hpp"

#include <algorithm>
#include <cmath>

namespace epic {

Vec3 project_velocity(const Vec3& anchor_v, int aoi, double alpha) {
    return anchor_v * std::pow(alpha, aoi);
}

Vec3 project_position(const Vec3& anchor_p, const Vec3& anchor_v, int aoi, double alpha,
                      double dt) {
    double series;
    if (alpha == 1.0) {
        series = static_cast<double>(aoi);
    } else {
        series = alpha * (1.0 - std::pow(alpha, aoi)) / (1.0 - alpha);
    }
    return anchor_p + anchor_v * (series * dt);
}

BeliefEntry stsi_infer(const BeliefEntry& entry, const StsiParams& params) {
    const int aoi = entry.aoi.current;
    BeliefEntry out = entry;

    const Vec3 raw_v = project_velocity(entry.anchor_state.velocity, aoi, params.alpha);
    out.belief.velocity = clamp_manifold(raw_v, entry.anchor_velocity_prev, params.limits);

    // Recomputed from the anchor each time, never accumulated, so long
    // silences do not build up floating-point drift.
    const Vec3 raw_p = project_position(entry.anchor_state.position,
                                        entry.anchor_state.velocity, aoi, params.alpha,
                                        params.dt);
    out.belief.position = clamp_to_box(raw_p, params.limits.volume);

    out.anchor_velocity_prev = out.belief.velocity;
    return out;
}

BeliefEntry apply_packet(const BeliefEntry& entry, const AgentState& fresh, int step) {
    BeliefEntry out = entry;
    out.anchor_state = fresh;
    out.belief = fresh;
    out.anchor_velocity_prev = fresh.velocity;
    out.aoi.last_rx_step = step;
    out.aoi.current = 0;
    return out;
}

AgentState reactive_estimate(const BeliefEntry& entry) { return entry.anchor_state; }

double sample_reaction_latency_ms(Scheme scheme, const StsiParams& params,
                                  const LinkParams& link, Rng& rng) {
    if (scheme == Scheme::kEpic) {
        const double draw = params.tau_stsi_jitter_ms > 0.0
                                ? rng.normal(params.tau_stsi_ms, params.tau_stsi_jitter_ms)
                                : params.tau_stsi_ms;
        return std::max(draw, 0.0);
    }
    return sample_latency_ms(link, rng).total_ms();
}

void spatial_consistency_adjust(std::vector<BeliefEntry>& entries, double d_safe_m) {
    for (std::size_t i = 0; i < entries.size(); ++i) {
        for (std::size_t j = i + 1; j < entries.size(); ++j) {
            Vec3& a = entries[i].belief.position;
            Vec3& b = entries[j].belief.position;
            const double d = distance(a, b);
            if (d >= d_safe_m) continue;
            Vec3 dir{1.0, 0.0, 0.0};
            if (d > 1e-9) {
                dir = (b - a) / d;
            }
            const double push = 0.5 * (d_safe_m - d);
            a = a - dir * push;
            b = b + dir * push;
        }
    }
}

}  // namespace epic
