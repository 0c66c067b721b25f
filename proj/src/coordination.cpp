#include "epic/coordination.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace epic {

namespace {

// Received power in mW from every candidate position to every target,
// flattened as rows of n_targets.
std::vector<double> power_rows(const std::vector<Vec3>& positions,
                               const std::vector<Target>& targets,
                               const ChannelParams& params) {
    std::vector<double> rows(positions.size() * targets.size());
    AgentState probe;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        probe.position = positions[i];
        for (std::size_t n = 0; n < targets.size(); ++n) {
            rows[i * targets.size() + n] = dbm_to_mw(received_power_dbm(probe, targets[n], params));
        }
    }
    return rows;
}

}  // namespace

AssignmentContext::AssignmentContext(const std::vector<Target>& targets_,
                                     const ChannelParams& params_, double altitude_m_)
    : targets(targets_), params(params_), altitude_m(altitude_m_) {
    if (targets.empty()) {
        throw std::invalid_argument("assign_targets requires a nonempty target list");
    }
    candidates.resize(targets.size());
    for (std::size_t t = 0; t < targets.size(); ++t) {
        candidates[t] = {targets[t].position.x, targets[t].position.y, altitude_m};
    }
    cand_power_mw = power_rows(candidates, targets, params);
    noise_mw = dbm_to_mw(params.noise_dbm);
    sinr_lin_threshold = std::pow(10.0, params.sinr_threshold_db / 10.0);
}

Assignment assign_targets(const AssignmentContext& ctx,
                          const std::vector<AgentState>& believed_states) {
    if (believed_states.empty()) {
        throw std::invalid_argument("assign_targets requires at least one agent");
    }
    const std::size_t n_agents = believed_states.size();
    const std::size_t n_targets = ctx.targets.size();

    std::vector<Vec3> believed_pos(n_agents);
    for (std::size_t j = 0; j < n_agents; ++j) {
        believed_pos[j] = believed_states[j].position;
    }
    const std::vector<double> believed_power = power_rows(believed_pos, ctx.targets, ctx.params);

    Assignment result;
    result.waypoints.resize(n_agents);
    result.target_index.resize(n_agents);

    std::vector<double> ctx_sum(n_targets);
    std::vector<double> ctx_max(n_targets);

    for (std::size_t m = 0; m < n_agents; ++m) {
        // Context seen by slot m: already-assigned agents at their waypoints,
        // later agents at their believed positions.
        std::fill(ctx_sum.begin(), ctx_sum.end(), 0.0);
        std::fill(ctx_max.begin(), ctx_max.end(), 0.0);
        auto add_row = [&](const double* row) {
            for (std::size_t n = 0; n < n_targets; ++n) {
                ctx_sum[n] += row[n];
                ctx_max[n] = std::max(ctx_max[n], row[n]);
            }
        };
        for (std::size_t j = 0; j < m; ++j) {
            add_row(&ctx.cand_power_mw[result.target_index[j] * n_targets]);
        }
        for (std::size_t j = m + 1; j < n_agents; ++j) {
            add_row(&believed_power[j * n_targets]);
        }

        double best_score = -1.0;
        std::size_t best_t = 0;
        for (std::size_t t = 0; t < n_targets; ++t) {
            const double* row = &ctx.cand_power_mw[t * n_targets];
            double covered = 0.0;
            for (std::size_t n = 0; n < n_targets; ++n) {
                const double own = row[n];
                const double total = ctx_sum[n] + own;
                // The best server is the strongest transmitter: SINR is
                // increasing in own power at fixed total.
                const double best_p = std::max(ctx_max[n], own);
                if (best_p / (total - best_p + ctx.noise_mw) >= ctx.sinr_lin_threshold) {
                    covered += ctx.targets[n].weight;
                }
            }
            if (covered > best_score) {
                best_score = covered;
                best_t = t;
            }
        }
        result.target_index[m] = best_t;
        result.waypoints[m] = ctx.candidates[best_t];
    }
    return result;
}

Assignment assign_targets(const std::vector<AgentState>& believed_states,
                          const std::vector<Target>& targets, const ChannelParams& params,
                          double altitude_m) {
    const AssignmentContext ctx(targets, params, altitude_m);
    return assign_targets(ctx, believed_states);
}

Vec3 velocity_command(const AgentState& self, const Vec3& waypoint,
                      const KinematicLimits& limits) {
    const Vec3 delta = waypoint - self.position;
    const double dist = delta.norm();
    if (dist < 0.1) {
        return {0.0, 0.0, 0.0};
    }
    const double speed = std::min(limits.v_max, dist / limits.dt);
    return delta * (speed / dist);
}

}  // namespace epic
