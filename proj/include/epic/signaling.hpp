#pragma once

#include <cstdint>
#include <vector>

#include "epic/kinematics.hpp"
#include "epic/rng.hpp"

namespace epic {

using AgentId = int;

/// Stochastic signaling-plane parameters.
struct LinkParams {
    double tau_base_ms{150.0};      // cumulative propagation + queuing delay
    double jitter_sigma_ms{20.0};   // jitter scale
    bool jitter_one_sided{true};    // retransmissions only ever add delay
    int t_up_steps{10};             // silence period, in coordination steps
    std::uint64_t seed{0};
};

/// One packet's sampled latency decomposition.
struct LinkSample {
    double tau_base_ms{0.0};
    double jitter_ms{0.0};
    double total_ms() const { return tau_base_ms + jitter_ms; }
};

/// A broadcast state update in flight.
struct Packet {
    AgentId sender{0};
    AgentState state;
    int sent_step{0};
    double deliver_at_ms{0.0};
};

/// Age-of-information counter for one peer entry.
struct AoiCounter {
    int last_rx_step{0};
    int current{0};
};

/// Draws tau_base + jitter; one-sided jitter is rectified at zero.
LinkSample sample_latency_ms(const LinkParams& params, Rng& rng);

/// Periodic silence schedule: peer j may transmit only at steps congruent to
/// its phase modulo t_up; phases are staggered by peer id.
bool silence_gate(int step, AgentId peer, const LinkParams& params);

/// AoI bookkeeping: reset on reception, otherwise count steps since last one.
AoiCounter aoi_update(const AoiCounter& counter, int step, bool received);

/// Delayed-delivery queue with per-sender FIFO repair: a packet sent later
/// never overtakes an earlier one from the same sender.
class PacketQueue {
  public:
    /// Enqueues with monotonic repair: deliver_at is raised to the sender's
    /// previous deliver_at when sampling would have reordered the link.
    void push(Packet packet);

    /// Removes and returns all packets due at or before now_ms, ordered by
    /// delivery time with ties broken by sender id.
    std::vector<Packet> pop_due(double now_ms);

    std::size_t pending() const { return queue_.size(); }
    std::size_t total_pushed() const { return total_pushed_; }
    std::size_t total_delivered() const { return total_delivered_; }

  private:
    std::vector<Packet> queue_;  // kept sorted by (deliver_at_ms, sender)
    std::vector<double> last_deliver_ms_;  // per sender id
    std::size_t total_pushed_{0};
    std::size_t total_delivered_{0};
};

}  // namespace epic
