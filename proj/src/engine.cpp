#include "epic/engine.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>

namespace epic {

namespace {

// Stream purposes hanging off a trial seed.
constexpr std::uint64_t kStreamTrial = 0x545249414c;       // "TRIAL"
constexpr std::uint64_t kStreamPlacement = 0x504c414345;   // "PLACE"
constexpr std::uint64_t kStreamLink = 0x4c494e4b;          // "LINK"
constexpr std::uint64_t kStreamEpicLatency = 0x45504943;   // "EPIC"
constexpr std::uint64_t kStreamTradLatency = 0x54524144;   // "TRAD"

struct RunningStats {
    std::size_t n{0};
    double mean{0.0};
    double m2{0.0};

    void add(double x) {
        ++n;
        const double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }
    double stddev() const { return n > 1 ? std::sqrt(m2 / static_cast<double>(n - 1)) : 0.0; }
};

int ticks_per_step(const ScenarioConfig& cfg) {
    return static_cast<int>(std::lround(cfg.inference_hz * cfg.step_dt_s));
}

}  // namespace

KinematicLimits ScenarioConfig::make_limits() const {
    KinematicLimits limits;
    limits.v_max = v_max_mps;
    limits.a_max = a_max_mps2;
    limits.volume = AaBox{{0.0, 0.0, 0.0}, {volume_x_m, volume_y_m, volume_z_m}};
    limits.dt = step_dt_s;
    return limits;
}

StsiParams ScenarioConfig::make_stsi() const {
    StsiParams params;
    params.alpha = alpha;
    params.dt = step_dt_s;
    params.limits = make_limits();
    params.tau_stsi_ms = tau_stsi_ms;
    params.tau_stsi_jitter_ms = tau_stsi_jitter_ms;
    params.spatial_consistency = spatial_consistency;
    params.d_safe_m = d_safe_m;
    return params;
}

const char* scheme_name(Scheme scheme) {
    return scheme == Scheme::kEpic ? "epic" : "traditional";
}

void validate_config(const ScenarioConfig& c) {
    auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
    if (c.n_agents < 1) fail("scenario.n_agents must be >= 1");
    if (c.n_targets < 1) fail("scenario.n_targets must be >= 1");
    if (c.mission_steps < 1) fail("scenario.mission_steps must be >= 1");
    if (!(c.step_dt_s > 0.0)) fail("scenario.step_dt_s must be > 0");
    if (!(c.inference_hz > 0.0)) fail("scenario.inference_hz must be > 0");
    const double ticks = c.inference_hz * c.step_dt_s;
    if (std::abs(ticks - std::lround(ticks)) > 1e-9 || std::lround(ticks) < 1) {
        fail("scenario.inference_hz * scenario.step_dt_s must be a positive integer");
    }
    if (c.volume_x_m <= 0.0 || c.volume_y_m <= 0.0 || c.volume_z_m <= 0.0) {
        fail("scenario volume must be nonempty");
    }
    if (c.altitude_m < 0.0 || c.altitude_m > c.volume_z_m) {
        fail("scenario.altitude_m must lie inside the mission volume");
    }
    if (!(c.v_max_mps > 0.0)) fail("kinematics.v_max_mps must be > 0");
    if (!(c.a_max_mps2 > 0.0)) fail("kinematics.a_max_mps2 must be > 0");
    if (!(c.channel.a > 0.0)) fail("channel.a must be > 0");
    if (!(c.channel.b > 0.0)) fail("channel.b must be > 0");
    if (!(c.channel.f_c_hz > 0.0)) fail("channel.f_c_hz must be > 0");
    if (c.channel.eta_los_db < 0.0 || c.channel.eta_nlos_db < c.channel.eta_los_db) {
        fail("channel excess losses must satisfy eta_nlos_db >= eta_los_db >= 0");
    }
    if (c.link.tau_base_ms < 0.0) fail("link.tau_base_ms must be >= 0");
    if (c.link.jitter_sigma_ms < 0.0) fail("link.jitter_sigma_ms must be >= 0");
    if (c.link.t_up_steps < 0) fail("link.t_up_steps must be >= 0");
    if (!(c.alpha > 0.0) || c.alpha > 1.0) fail("stsi.alpha must lie in (0, 1]");
    if (c.tau_stsi_ms < 0.0) fail("stsi.tau_stsi_ms must be >= 0");
    if (c.tau_stsi_jitter_ms < 0.0) fail("stsi.tau_stsi_jitter_ms must be >= 0");
    if (c.d_safe_m < 0.0) fail("stsi.d_safe_m must be >= 0");
    if (c.trials < 1) fail("scenario.trials must be >= 1");
}

World init_scenario(const ScenarioConfig& config, std::uint64_t trial_seed) {
    validate_config(config);

    World w;
    w.cfg = config;
    w.limits = config.make_limits();
    w.stsi = config.make_stsi();

    Rng placement(derive_seed(trial_seed, kStreamPlacement));
    const std::size_t n = static_cast<std::size_t>(config.n_agents);

    w.agents.resize(n);
    for (auto& agent : w.agents) {
        agent.position = {placement.uniform(0.0, config.volume_x_m),
                          placement.uniform(0.0, config.volume_y_m), config.altitude_m};
        agent.velocity = {0.0, 0.0, 0.0};
    }
    w.targets.resize(static_cast<std::size_t>(config.n_targets));
    for (auto& target : w.targets) {
        target.position = {placement.uniform(0.0, config.volume_x_m),
                           placement.uniform(0.0, config.volume_y_m), 0.0};
        target.weight = static_cast<double>(placement.uniform_int(1, 5));
    }
    w.assignment_ctx.emplace(w.targets, config.channel, config.altitude_m);

    // Mission briefing: every buffer starts from the true initial states.
    w.buffers.assign(n, std::vector<BeliefEntry>(n));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t s = 0; s < n; ++s) {
            w.buffers[r][s] = apply_packet(BeliefEntry{}, w.agents[s], 0);
        }
    }

    w.link_rng.reserve(n);
    for (std::size_t s = 0; s < n; ++s) {
        w.link_rng.emplace_back(derive_seed(trial_seed, kStreamLink, s));
    }
    w.epic_latency_rng = Rng(derive_seed(trial_seed, kStreamEpicLatency));
    w.trad_latency_rng = Rng(derive_seed(trial_seed, kStreamTradLatency));

    w.waypoints.assign(n, Vec3{});
    return w;
}

TickMetrics run_step(World& w, int step) {
    const std::size_t n = w.agents.size();
    const double step_ms = w.cfg.step_dt_s * 1000.0;
    const double now_ms = static_cast<double>(step) * step_ms;

    // (1) Communication loop: gated broadcasts enter the delayed queue, then
    // everything due inside this step's window is delivered. The base latency
    // is far below the step length, so a packet normally lands within the
    // step it was sent in, carrying the sender's state at that same step.
    for (std::size_t s = 0; s < n; ++s) {
        if (!silence_gate(step, static_cast<AgentId>(s), w.cfg.link)) continue;
        const LinkSample sample = sample_latency_ms(w.cfg.link, w.link_rng[s]);
        Packet p;
        p.sender = static_cast<AgentId>(s);
        p.state = w.agents[s];
        p.sent_step = step;
        p.deliver_at_ms = now_ms + std::max(sample.total_ms(), 0.0);
        w.queue.push(p);
    }
    std::vector<bool> delivered_from(n, false);
    for (const Packet& p : w.queue.pop_due(now_ms + step_ms)) {
        const auto s = static_cast<std::size_t>(p.sender);
        delivered_from[s] = true;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == s) continue;
            w.buffers[r][s] = apply_packet(w.buffers[r][s], p.state, step);
        }
    }

    // (2) AoI bookkeeping.
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t s = 0; s < n; ++s) {
            if (r == s) continue;
            w.buffers[r][s].aoi = aoi_update(w.buffers[r][s].aoi, step, delivered_from[s]);
        }
    }

    // (3) Inference loop. Every tick recomputes stale beliefs from their
    // anchors; within a step the AoI is constant, so only the final tick's
    // belief feeds the decision below.
    if (w.cfg.scheme == Scheme::kEpic) {
        const int ticks = ticks_per_step(w.cfg);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t s = 0; s < n; ++s) {
                if (r == s || w.buffers[r][s].aoi.current < 1) continue;
                BeliefEntry candidate = w.buffers[r][s];
                for (int t = 0; t < ticks; ++t) {
                    candidate = stsi_infer(w.buffers[r][s], w.stsi);
                }
                w.buffers[r][s] = candidate;
            }
            if (w.stsi.spatial_consistency) {
                std::vector<BeliefEntry> peers;
                peers.reserve(n - 1);
                for (std::size_t s = 0; s < n; ++s) {
                    if (s != r) peers.push_back(w.buffers[r][s]);
                }
                spatial_consistency_adjust(peers, w.stsi.d_safe_m);
                std::size_t k = 0;
                for (std::size_t s = 0; s < n; ++s) {
                    if (s != r) w.buffers[r][s] = peers[k++];
                }
            }
        }
    }

    // (4) Coordination. EPIC decides every step from projected beliefs; the
    // traditional scheme only re-decides when a delivery brought fresh state,
    // and otherwise keeps flying the stale plan.
    w.step_latency_samples.clear();
    std::vector<Vec3> commands(n);
    std::vector<AgentState> believed(n);
    for (std::size_t i = 0; i < n; ++i) {
        bool decide = true;
        if (w.cfg.scheme == Scheme::kTraditional) {
            bool received_any = false;
            for (std::size_t s = 0; s < n; ++s) {
                if (s != i && delivered_from[s]) received_any = true;
            }
            decide = step == 0 || received_any;
        }
        if (decide) {
            for (std::size_t j = 0; j < n; ++j) {
                believed[j] = (j == i) ? w.agents[i]
                              : (w.cfg.scheme == Scheme::kEpic
                                     ? w.buffers[i][j].belief
                                     : reactive_estimate(w.buffers[i][j]));
            }
            const Assignment plan = assign_targets(*w.assignment_ctx, believed);
            w.waypoints[i] = plan.waypoints[i];

            Rng& latency_rng =
                w.cfg.scheme == Scheme::kEpic ? w.epic_latency_rng : w.trad_latency_rng;
            const double tau_r =
                sample_reaction_latency_ms(w.cfg.scheme, w.stsi, w.cfg.link, latency_rng);
            w.step_latency_samples.push_back(tau_r);
            w.trial_latency_samples.push_back(tau_r);
        }
        commands[i] = velocity_command(w.agents[i], w.waypoints[i], w.limits);
    }

    // (5) Physics.
    for (std::size_t i = 0; i < n; ++i) {
        w.agents[i] = integrate(w.agents[i], commands[i], w.limits);
    }

    // (6) Metrics.
    TickMetrics metrics;
    metrics.step = step;
    metrics.scheme = w.cfg.scheme;
    metrics.wce = wce(w.targets, w.agents, w.cfg.channel);
    metrics.agent_max_aoi.assign(n, 0);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t s = 0; s < n; ++s) {
            if (r == s) continue;
            metrics.agent_max_aoi[r] = std::max(metrics.agent_max_aoi[r],
                                                w.buffers[r][s].aoi.current);
        }
    }
    metrics.decision_count = static_cast<int>(w.step_latency_samples.size());
    if (w.step_latency_samples.empty()) {
        metrics.reaction_latency_ms = std::numeric_limits<double>::quiet_NaN();
    } else {
        double sum = 0.0;
        for (double v : w.step_latency_samples) sum += v;
        metrics.reaction_latency_ms = sum / static_cast<double>(w.step_latency_samples.size());
    }
    return metrics;
}

TrialResult run_trial(const ScenarioConfig& config, int trial_index) {
    const std::uint64_t trial_seed =
        derive_seed(config.master_seed, kStreamTrial, static_cast<std::uint64_t>(trial_index));
    World w = init_scenario(config, trial_seed);

    TrialResult result;
    result.ticks.reserve(static_cast<std::size_t>(config.mission_steps));
    RunningStats wce_stats;
    for (int step = 0; step < config.mission_steps; ++step) {
        TickMetrics tick = run_step(w, step);
        wce_stats.add(tick.wce);
        result.ticks.push_back(std::move(tick));
    }

    RunningStats latency_stats;
    for (double v : w.trial_latency_samples) latency_stats.add(v);

    TrialSummary& s = result.summary;
    s.trial = trial_index;
    s.scheme = config.scheme;
    s.seed = trial_seed;
    s.wce_mean = wce_stats.mean;
    s.wce_std = wce_stats.stddev();
    s.latency_mean_ms = latency_stats.mean;
    s.latency_std_ms = latency_stats.stddev();
    s.latency_events = latency_stats.n;
    s.packets_sent = w.queue.total_pushed();
    s.packets_delivered = w.queue.total_delivered();
    s.packets_pending = w.queue.pending();
    result.latency_samples = std::move(w.trial_latency_samples);
    return result;
}

std::vector<TrialResult> run_trials(const ScenarioConfig& config) {
    validate_config(config);
    std::vector<std::future<TrialResult>> futures;
    futures.reserve(static_cast<std::size_t>(config.trials));
    for (int t = 0; t < config.trials; ++t) {
        futures.push_back(
            std::async(std::launch::async, [config, t]() { return run_trial(config, t); }));
    }
    std::vector<TrialResult> results;
    results.reserve(futures.size());
    for (auto& f : futures) {
        results.push_back(f.get());
    }
    return results;
}

std::vector<SweepCell> sweep(const ScenarioConfig& config, SweepParameter parameter,
                             const std::vector<double>& values) {
    if (values.empty()) {
        throw std::invalid_argument("sweep requires a nonempty value list");
    }
    std::vector<SweepCell> cells;
    for (double value : values) {
        ScenarioConfig cfg = config;
        switch (parameter) {
            case SweepParameter::kTUp:
                cfg.link.t_up_steps = static_cast<int>(std::lround(value));
                break;
            case SweepParameter::kJitterSigma:
                cfg.link.jitter_sigma_ms = value;
                break;
        }
        for (Scheme scheme : {Scheme::kEpic, Scheme::kTraditional}) {
            cfg.scheme = scheme;
            SweepCell cell;
            cell.value = value;
            cell.scheme = scheme;
            cell.trials = run_trials(cfg);
            cells.push_back(std::move(cell));
        }
    }
    return cells;
}

}  // namespace epic
