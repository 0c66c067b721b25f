#include "epic/signaling.hpp"

#include <algorithm>

namespace epic {

LinkSample sample_latency_ms(const LinkParams& params, Rng& rng) {
    LinkSample sample;
    sample.tau_base_ms = params.tau_base_ms;
    double jitter = params.jitter_sigma_ms > 0.0 ? rng.normal(0.0, params.jitter_sigma_ms) : 0.0;
    if (params.jitter_one_sided) {
        jitter = std::max(jitter, 0.0);
    }
    sample.jitter_ms = jitter;
    return sample;
}

bool silence_gate(int step, AgentId peer, const LinkParams& params) {
    const int period = std::max(params.t_up_steps, 1);
    const int phase = static_cast<int>(peer) % period;
    return step % period == phase;
}

AoiCounter aoi_update(const AoiCounter& counter, int step, bool received) {
    AoiCounter next = counter;
    if (received) {
        next.last_rx_step = step;
        next.current = 0;
    } else {
        next.current = step - counter.last_rx_step;
    }
    return next;
}

void PacketQueue::push(Packet packet) {
    const auto id = static_cast<std::size_t>(packet.sender);
    if (id >= last_deliver_ms_.size()) {
        last_deliver_ms_.resize(id + 1, -1.0);
    }
    if (packet.deliver_at_ms < last_deliver_ms_[id]) {
        packet.deliver_at_ms = last_deliver_ms_[id];
    }
    last_deliver_ms_[id] = packet.deliver_at_ms;

    auto pos = std::upper_bound(queue_.begin(), queue_.end(), packet,
                                [](const Packet& a, const Packet& b) {
                                    if (a.deliver_at_ms != b.deliver_at_ms)
                                        return a.deliver_at_ms < b.deliver_at_ms;
                                    return a.sender < b.sender;
                                });
    queue_.insert(pos, packet);
    ++total_pushed_;
}

std::vector<Packet> PacketQueue::pop_due(double now_ms) {
    auto end = std::find_if(queue_.begin(), queue_.end(),
                            [now_ms](const Packet& p) { return p.deliver_at_ms > now_ms; });
    std::vector<Packet> due(queue_.begin(), end);
    queue_.erase(queue_.begin(), end);
    total_delivered_ += due.size();
    return due;
}

}  // namespace epic
