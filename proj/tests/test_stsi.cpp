#include <doctest.h>

#include <cmath>

#include "bench_util.hpp"
#include "epic/rng.hpp"
#include "epic/stsi.hpp"

using namespace epic;

namespace {

StsiParams default_params(double alpha = 1.0) {
    StsiParams p;
    p.alpha = alpha;
    p.dt = 1.0;
    return p;
}

BeliefEntry entry_with(const Vec3& pos, const Vec3& vel, int aoi) {
    BeliefEntry e;
    e.anchor_state.position = pos;
    e.anchor_state.velocity = vel;
    e.anchor_velocity_prev = vel;
    e.aoi.current = aoi;
    e.belief = e.anchor_state;
    return e;
}

}  // namespace

TEST_CASE("project_velocity damps by alpha^aoi") {
    CHECK(project_velocity({2, 0, 0}, 7, 1.0) == Vec3{2, 0, 0});
    CHECK(project_velocity({10, 0, 0}, 2, 0.5).x == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(project_velocity({3, -1, 2}, 0, 0.3) == Vec3{3, -1, 2});
}

TEST_CASE("project_position closed-form geometric series") {
    // Pure dead reckoning: S = 3.
    const Vec3 p1 = project_position({0, 0, 0}, {2, 0, 0}, 3, 1.0, 0.1);
    CHECK(p1.x == doctest::Approx(0.6).epsilon(1e-12));
    // S = 0.5 + 0.25 = 0.75.
    const Vec3 p2 = project_position({0, 0, 0}, {10, 0, 0}, 2, 0.5, 1.0);
    CHECK(p2.x == doctest::Approx(7.5).epsilon(1e-12));
    // Empty sum.
    CHECK(project_position({4, 5, 6}, {9, 9, 9}, 0, 0.7, 1.0) == Vec3{4, 5, 6});
}

TEST_CASE("stsi_infer guardrails an infeasible anchor velocity") {
    StsiParams params = default_params(1.0);
    BeliefEntry e = entry_with({900, 900, 100}, {0, 30, 0}, 1);
    const BeliefEntry out = stsi_infer(e, params);
    CHECK(out.belief.velocity.norm() == doctest::Approx(20.0).epsilon(1e-9));
    CHECK(out.anchor_velocity_prev == out.belief.velocity);
}

TEST_CASE("alpha=1 inference equals a step-by-step dead-reckoning oracle") {
    StsiParams params = default_params(1.0);
    Rng rng(0xDEAD);
    for (int i = 0; i < 10000; ++i) {
        const Vec3 pos{rng.uniform(600, 1200), rng.uniform(600, 1200), rng.uniform(30, 70)};
        // Small velocities keep the projected path inside the volume so the
        // clamp never engages.
        const Vec3 vel{rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(-0.3, 0.3)};
        const int aoi = rng.uniform_int(1, 50);
        const BeliefEntry out = stsi_infer(entry_with(pos, vel, aoi), params);

        Vec3 oracle = pos;
        for (int k = 0; k < aoi; ++k) oracle += vel * params.dt;
        CHECK(distance(out.belief.position, oracle) <= 1e-9);
        CHECK(distance(out.belief.velocity, vel) <= 1e-12);
    }
}

TEST_CASE("alpha<1 drift never exceeds the geometric-series bound") {
    Rng rng(0xD81F7);
    for (int i = 0; i < 5000; ++i) {
        const double alpha = rng.uniform(0.05, 0.95);
        StsiParams params = default_params(alpha);
        const Vec3 pos{rng.uniform(600, 1200), rng.uniform(600, 1200), 50};
        const Vec3 vel{rng.uniform(-20, 20), rng.uniform(-20, 20), 0};
        const int aoi = rng.uniform_int(1, 200);
        const BeliefEntry out = stsi_infer(entry_with(pos, vel, aoi), params);
        const double bound = alpha / (1.0 - alpha) * vel.norm() * params.dt;
        CHECK(distance(out.belief.position, pos) <= bound + 1e-9);
    }
}

TEST_CASE("damping contraction: projected speed strictly decreases in aoi") {
    const Vec3 v{12, -5, 1};
    for (double alpha : {0.3, 0.6, 0.9, 0.99}) {
        for (int aoi = 0; aoi < 30; ++aoi) {
            CHECK(project_velocity(v, aoi + 1, alpha).norm() <
                  project_velocity(v, aoi, alpha).norm());
        }
    }
}

TEST_CASE("guardrail safety over randomized infeasible anchors") {
    StsiParams params = default_params(1.0);
    Rng rng(0x6A8D);
    for (int i = 0; i < 20000; ++i) {
        BeliefEntry e;
        e.anchor_state.position = {rng.uniform(0, 1800), rng.uniform(0, 1800),
                                   rng.uniform(0, 100)};
        // Anchors may be wildly infeasible; the previous belief velocity is
        // feasible, as every in-engine history guarantees.
        e.anchor_state.velocity = {rng.uniform(-90, 90), rng.uniform(-90, 90),
                                   rng.uniform(-90, 90)};
        Vec3 prev{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        if (prev.norm() > 1e-12) prev = prev * (rng.uniform01() * 20.0 / prev.norm());
        e.anchor_velocity_prev = prev;
        e.aoi.current = rng.uniform_int(1, 60);
        params.alpha = rng.uniform(0.2, 1.0);

        const BeliefEntry out = stsi_infer(e, params);
        CHECK(out.belief.velocity.norm() <= params.limits.v_max + 1e-9);
        CHECK((out.belief.velocity - prev).norm() <= params.limits.a_max * params.limits.dt + 1e-9);
        CHECK(params.limits.volume.contains(out.belief.position));
    }
}

TEST_CASE("apply_packet resets the entry to the fresh state") {
    BeliefEntry stale = entry_with({100, 100, 100}, {5, 0, 0}, 40);
    AgentState fresh;
    fresh.position = {200, 300, 100};
    fresh.velocity = {1, 2, 0};
    const BeliefEntry out = apply_packet(stale, fresh, 41);
    CHECK(out.belief.position == fresh.position);
    CHECK(out.anchor_state.position == fresh.position);
    CHECK(out.anchor_velocity_prev == fresh.velocity);
    CHECK(out.aoi.current == 0);
    CHECK(out.aoi.last_rx_step == 41);

    // Two consecutive packets: the belief tracks the latest.
    AgentState fresher;
    fresher.position = {250, 350, 100};
    const BeliefEntry out2 = apply_packet(out, fresher, 42);
    CHECK(out2.belief.position == fresher.position);
}

TEST_CASE("packet followed by one silent step equals one inference from the new anchor") {
    StsiParams params = default_params(0.8);
    AgentState fresh;
    fresh.position = {500, 500, 100};
    fresh.velocity = {10, 0, 0};
    BeliefEntry e = apply_packet(BeliefEntry{}, fresh, 10);
    e.aoi = aoi_update(e.aoi, 11, false);
    REQUIRE(e.aoi.current == 1);
    const BeliefEntry out = stsi_infer(e, params);
    CHECK(out.belief.position.x == doctest::Approx(500.0 + 0.8 * 10.0).epsilon(1e-12));
    CHECK(out.belief.velocity.x == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("belief equals anchor exactly when aoi is zero, differs once stale") {
    StsiParams params = default_params(0.9);
    AgentState fresh;
    fresh.position = {400, 400, 100};
    fresh.velocity = {6, 0, 0};
    BeliefEntry e = apply_packet(BeliefEntry{}, fresh, 0);
    CHECK(e.belief.position == e.anchor_state.position);
    CHECK(e.belief.velocity == e.anchor_state.velocity);

    e.aoi = aoi_update(e.aoi, 1, false);
    const BeliefEntry out = stsi_infer(e, params);
    CHECK(out.belief.position.x != out.anchor_state.position.x);
}

TEST_CASE("reactive estimate freezes perception") {
    BeliefEntry e = entry_with({5, 5, 100}, {20, 0, 0}, 40);
    const AgentState z = reactive_estimate(e);
    CHECK(z.position == Vec3{5, 5, 100});

    // After 10 silent steps at 20 m/s the frozen baseline is 200 m off while
    // undamped inference tracks exactly.
    StsiParams params = default_params(1.0);
    BeliefEntry moving = entry_with({0, 0, 50}, {20, 0, 0}, 10);
    const BeliefEntry inferred = stsi_infer(moving, params);
    Vec3 truth = moving.anchor_state.position + moving.anchor_state.velocity * 10.0;
    CHECK(distance(inferred.belief.position, truth) <= 1e-9);
    CHECK(distance(reactive_estimate(moving).position, truth) == doctest::Approx(200.0));
}

TEST_CASE("reaction latency sampling per scheme") {
    StsiParams params = default_params();
    LinkParams link;

    SUBCASE("EPIC with zero jitter is exactly the heartbeat") {
        params.tau_stsi_jitter_ms = 0.0;
        Rng rng(1);
        for (int i = 0; i < 50; ++i) {
            CHECK(sample_reaction_latency_ms(Scheme::kEpic, params, link, rng) == 9.73);
        }
    }
    SUBCASE("EPIC mean is unaffected by link jitter") {
        link.jitter_sigma_ms = 100.0;
        Rng rng(2);
        double sum = 0.0;
        const int n = 200000;
        for (int i = 0; i < n; ++i) {
            sum += sample_reaction_latency_ms(Scheme::kEpic, params, link, rng);
        }
        CHECK(sum / n == doctest::Approx(9.73).epsilon(1e-3));
    }
    SUBCASE("traditional reaction sits at link-latency scale") {
        Rng rng(3);
        double sum = 0.0;
        const int n = 200000;
        for (int i = 0; i < n; ++i) {
            sum += sample_reaction_latency_ms(Scheme::kTraditional, params, link, rng);
        }
        CHECK(sum / n > 149.0);
        CHECK(sum / n < 160.0);
    }
}

TEST_CASE("spatial consistency pass separates close pairs symmetrically") {
    std::vector<BeliefEntry> entries(2);
    entries[0].belief.position = {100, 0, 50};
    entries[1].belief.position = {103, 0, 50};
    spatial_consistency_adjust(entries, 5.0);
    CHECK(distance(entries[0].belief.position, entries[1].belief.position) ==
          doctest::Approx(5.0).epsilon(1e-12));
    CHECK(entries[0].belief.position.x == doctest::Approx(99.0));
    CHECK(entries[1].belief.position.x == doctest::Approx(104.0));
}

TEST_CASE("per-tick inference cost scales linearly in peer count") {
    using namespace epic::testing;
    StsiParams params = default_params(0.97);
    const auto small = make_peer_entries(10, 0xBEEF);
    const auto large = make_peer_entries(100, 0xBEEF);
    const double t10 = median_tick_ns(small, params, 40, 400);
    const double t100 = median_tick_ns(large, params, 40, 40);
    CHECK(t100 / t10 <= 15.0);
}
