#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "epic/kinematics.hpp"
#include "epic/vec3.hpp"

namespace epic {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

/// Probabilistic air-to-ground channel parameters.
struct ChannelParams {
    double a{9.61};                  // urban morphology constant
    double b{0.16};                  // morphology constant
    double f_c_hz{6.0e9};            // carrier frequency
    double eta_los_db{1.0};          // excess LoS attenuation
    double eta_nlos_db{20.0};        // excess NLoS attenuation
    double p_tx_dbm{20.0};           // transmit power
    double noise_dbm{-110.0};        // AWGN floor
    double sinr_threshold_db{0.0};   // coverage threshold
};

/// Ground point with an economic priority weight in [1, 5].
struct Target {
    Vec3 position;  // z = 0
    double weight{1.0};
};

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

/// Elevation angle in degrees from a ground point to an agent; 90 when the
/// agent is directly overhead (including the degenerate zero-distance case).
double elevation_angle(const Vec3& agent_pos, const Vec3& target_pos);

/// Line-of-sight probability, a sigmoid in the elevation angle.
double p_los(double theta_deg, const ChannelParams& params);

/// Free-space term 20*log10(4*pi*f_c*d/c).
double free_space_path_loss_db(double distance_m, const ChannelParams& params);

/// Mean path loss for an explicit LoS probability (the mixing is applied to
/// the dB attenuation terms).
double path_loss_with_plos_db(double distance_m, double plos, const ChannelParams& params);

/// Mean path loss at the given geometry.
double path_loss_db(double distance_m, double theta_deg, const ChannelParams& params);

/// Received power at a target from one agent, in dBm.
double received_power_dbm(const AgentState& agent, const Target& target,
                          const ChannelParams& params);

/// Best-server SINR at a target over all candidate serving agents, with the
/// other agents as co-channel interferers. Returns {SINR dB, serving index};
/// ties break to the lowest index.
std::pair<double, std::size_t> sinr_db(const Target& target,
                                       const std::vector<AgentState>& agents,
                                       const ChannelParams& params);

/// Weighted Coverage Efficiency: weight-normalized fraction of targets whose
/// best SINR clears the threshold.
double wce(const std::vector<Target>& targets, const std::vector<AgentState>& agents,
           const ChannelParams& params);

}  // namespace epic
