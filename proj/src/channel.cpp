#include "epic/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace epic {

double elevation_angle(const Vec3& agent_pos, const Vec3& target_pos) {
    const double h = agent_pos.z - target_pos.z;
    const double d = distance(agent_pos, target_pos);
    if (d == 0.0) return 90.0;
    return (180.0 / std::numbers::pi) * std::asin(h / d);
}

double p_los(double theta_deg, const ChannelParams& params) {
    return 1.0 / (1.0 + params.a * std::exp(-params.b * (theta_deg - params.a)));
}

double free_space_path_loss_db(double distance_m, const ChannelParams& params) {
    if (distance_m <= 0.0) {
        throw std::invalid_argument("path loss undefined at zero distance");
    }
    return 20.0 *
           std::log10(4.0 * std::numbers::pi * params.f_c_hz * distance_m / kSpeedOfLight);
}

double path_loss_with_plos_db(double distance_m, double plos, const ChannelParams& params) {
    return free_space_path_loss_db(distance_m, params) + plos * params.eta_los_db +
           (1.0 - plos) * params.eta_nlos_db;
}

double path_loss_db(double distance_m, double theta_deg, const ChannelParams& params) {
    return path_loss_with_plos_db(distance_m, p_los(theta_deg, params), params);
}

double received_power_dbm(const AgentState& agent, const Target& target,
                          const ChannelParams& params) {
    const double d = distance(agent.position, target.position);
    const double theta = elevation_angle(agent.position, target.position);
    return params.p_tx_dbm - path_loss_db(d, theta, params);
}

std::pair<double, std::size_t> sinr_db(const Target& target,
                                       const std::vector<AgentState>& agents,
                                       const ChannelParams& params) {
    if (agents.empty()) {
        throw std::invalid_argument("sinr_db requires at least one agent");
    }
    std::vector<double> power_mw(agents.size());
    double total_mw = 0.0;
    for (std::size_t i = 0; i < agents.size(); ++i) {
        power_mw[i] = dbm_to_mw(received_power_dbm(agents[i], target, params));
        total_mw += power_mw[i];
    }
    const double noise_mw = dbm_to_mw(params.noise_dbm);

    double best = -1.0;
    std::size_t best_idx = 0;
    for (std::size_t i = 0; i < agents.size(); ++i) {
        // Aggregate interference = total - own; one rounding so that the
        // coordination fast path can reproduce these digits exactly.
        const double sinr = power_mw[i] / (total_mw - power_mw[i] + noise_mw);
        if (sinr > best) {
            best = sinr;
            best_idx = i;
        }
    }
    return {10.0 * std::log10(best), best_idx};
}

double wce(const std::vector<Target>& targets, const std::vector<AgentState>& agents,
           const ChannelParams& params) {
    if (targets.empty()) {
        throw std::invalid_argument("wce requires a nonempty target list");
    }
    double covered = 0.0;
    double total = 0.0;
    for (const Target& t : targets) {
        total += t.weight;
        if (sinr_db(t, agents, params).first >= params.sinr_threshold_db) {
            covered += t.weight;
        }
    }
    return covered / total;
}

}  // namespace epic
