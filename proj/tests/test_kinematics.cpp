#include <doctest.h>

#include "epic/kinematics.hpp"
#include "epic/rng.hpp"

using namespace epic;

namespace {

KinematicLimits limits_with(double v_max, double a_max, double dt = 1.0) {
    KinematicLimits limits;
    limits.v_max = v_max;
    limits.a_max = a_max;
    limits.dt = dt;
    return limits;
}

}  // namespace

TEST_CASE("clamp_manifold is the identity on feasible input") {
    const Vec3 v = clamp_manifold({5, 0, 0}, {5, 0, 0}, limits_with(20, 10));
    CHECK(v == Vec3{5, 0, 0});
}

TEST_CASE("clamp_manifold rescales speed after the acceleration step") {
    // ||delta|| = 5 <= 10 leaves (25,0,0); the speed step rescales to 20.
    const Vec3 v = clamp_manifold({25, 0, 0}, {20, 0, 0}, limits_with(20, 10));
    CHECK(v.x == doctest::Approx(20.0).epsilon(1e-12));
    CHECK(v.y == 0.0);
    CHECK(v.z == 0.0);
}

TEST_CASE("clamp_manifold shrinks the acceleration delta first") {
    // Delta (0,30,0) shrinks to radius 10; speed step is then inactive.
    const Vec3 v = clamp_manifold({0, 30, 0}, {0, 0, 0}, limits_with(20, 10));
    CHECK(v.x == 0.0);
    CHECK(v.y == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(v.z == 0.0);
}

TEST_CASE("clamp_manifold satisfies both constraints when prev is feasible") {
    const KinematicLimits limits = limits_with(20, 10, 1.0);
    Rng rng(0xC1A);
    for (int i = 0; i < 20000; ++i) {
        // prev inside the speed ball, proposal unconstrained.
        Vec3 prev{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const double prev_norm = prev.norm();
        if (prev_norm > 1e-12) {
            prev = prev * (rng.uniform01() * limits.v_max / prev_norm);
        }
        const Vec3 proposed{rng.uniform(-80, 80), rng.uniform(-80, 80), rng.uniform(-80, 80)};
        const Vec3 v = clamp_manifold(proposed, prev, limits);
        CHECK(v.norm() <= limits.v_max + 1e-9);
        CHECK((v - prev).norm() <= limits.a_max * limits.dt + 1e-9);

        // Idempotence.
        const Vec3 again = clamp_manifold(v, prev, limits);
        CHECK(distance(again, v) <= 1e-12);
    }
}

TEST_CASE("integrate moves freely inside all limits") {
    AgentState s;
    s.position = {0, 0, 100};
    const AgentState next = integrate(s, {10, 0, 0}, limits_with(20, 100));
    CHECK(next.position == Vec3{10, 0, 100});
    CHECK(next.velocity == Vec3{10, 0, 0});
}

TEST_CASE("integrate clamps commanded speed to the norm bound") {
    AgentState s;
    s.position = {0, 0, 100};
    const AgentState next = integrate(s, {30, 0, 0}, limits_with(20, 1000));
    CHECK(next.velocity.x == doctest::Approx(20.0).epsilon(1e-12));
    CHECK(next.position.x == doctest::Approx(20.0).epsilon(1e-12));
    CHECK(next.position.z == 100.0);
}

TEST_CASE("integrate zeroes the axis velocity when the boundary clamps") {
    AgentState s;
    s.position = {1795, 0, 100};
    s.velocity = {10, 0, 0};
    const AgentState next = integrate(s, {10, 0, 0}, limits_with(20, 100));
    CHECK(next.position.x == 1800.0);
    CHECK(next.velocity.x == 0.0);
}

TEST_CASE("integrate never leaves the mission volume") {
    const KinematicLimits limits = limits_with(20, 10);
    Rng rng(0xB0);
    AgentState s;
    s.position = {900, 900, 50};
    for (int i = 0; i < 5000; ++i) {
        const Vec3 cmd{rng.uniform(-40, 40), rng.uniform(-40, 40), rng.uniform(-40, 40)};
        s = integrate(s, cmd, limits);
        CHECK(limits.volume.contains(s.position));
    }
}
