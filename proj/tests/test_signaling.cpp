#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "epic/signaling.hpp"

using namespace epic;

TEST_CASE("zero jitter gives the base latency exactly") {
    LinkParams params;
    params.jitter_sigma_ms = 0.0;
    Rng rng(1);
    for (int i = 0; i < 100; ++i) {
        CHECK(sample_latency_ms(params, rng).total_ms() == 150.0);
    }
}

TEST_CASE("one-sided jitter matches the half-normal mean") {
    LinkParams params;  // sigma = 20, one-sided
    Rng rng(0x0DD);
    double sum = 0.0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) {
        const LinkSample s = sample_latency_ms(params, rng);
        CHECK(s.total_ms() >= params.tau_base_ms);
        sum += s.total_ms();
    }
    // 150 + 20 / sqrt(2*pi)
    CHECK(sum / n == doctest::Approx(157.98).epsilon(0.1 / 157.98));
}

TEST_CASE("two-sided jitter is zero-mean") {
    LinkParams params;
    params.jitter_one_sided = false;
    Rng rng(0x0DD2);
    double sum = 0.0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) {
        sum += sample_latency_ms(params, rng).total_ms();
    }
    CHECK(sum / n == doctest::Approx(150.0).epsilon(0.1 / 150.0));
}

TEST_CASE("delivered latency spread grows with sigma") {
    // Backing for the jitter stress figure: empirical std is monotone in
    // sigma when the same underlying normal draws are scaled.
    LinkParams params;
    double prev_std = -1.0;
    for (double sigma : {0.0, 20.0, 40.0, 60.0, 80.0, 100.0}) {
        params.jitter_sigma_ms = sigma;
        Rng rng(0x5CA1E);  // same stream per sigma
        double sum = 0.0, sum2 = 0.0;
        const int n = 20000;
        for (int i = 0; i < n; ++i) {
            const double v = sample_latency_ms(params, rng).total_ms();
            sum += v;
            sum2 += v * v;
        }
        const double var = sum2 / n - (sum / n) * (sum / n);
        const double sd = std::sqrt(std::max(var, 0.0));
        CHECK(sd >= prev_std);
        if (sigma > 0.0) CHECK(sd > prev_std);
        prev_std = sd;
    }
}

TEST_CASE("silence gate schedules") {
    LinkParams params;
    SUBCASE("t_up = 1 transmits every step") {
        params.t_up_steps = 1;
        for (int step = 0; step < 20; ++step) {
            CHECK(silence_gate(step, 3, params));
        }
    }
    SUBCASE("t_up = 10, phase-0 peer transmits at multiples of 10") {
        params.t_up_steps = 10;
        for (int step = 0; step < 40; ++step) {
            CHECK(silence_gate(step, 0, params) == (step % 10 == 0));
        }
    }
    SUBCASE("t_up = 0 degenerates to every step") {
        params.t_up_steps = 0;
        CHECK(silence_gate(7, 2, params));
    }
    SUBCASE("peers are desynchronized by id") {
        params.t_up_steps = 10;
        CHECK(silence_gate(3, 3, params));
        CHECK_FALSE(silence_gate(3, 4, params));
    }
}

TEST_CASE("aoi update") {
    AoiCounter c;
    c.last_rx_step = 10;
    c.current = 0;
    const AoiCounter stale = aoi_update(c, 14, false);
    CHECK(stale.current == 4);
    CHECK(stale.last_rx_step == 10);

    const AoiCounter reset = aoi_update(stale, 14, true);
    CHECK(reset.current == 0);
    CHECK(reset.last_rx_step == 14);

    AoiCounter never;
    CHECK(aoi_update(never, 50, false).current == 50);
}

TEST_CASE("aoi saw-tooth over a random delivery schedule") {
    Rng rng(0xA01);
    for (int rep = 0; rep < 50; ++rep) {
        AoiCounter c;
        int last_rx = 0;
        for (int step = 1; step < 200; ++step) {
            const bool received = rng.uniform01() < 0.15;
            c = aoi_update(c, step, received);
            if (received) {
                CHECK(c.current == 0);
                last_rx = step;
            } else {
                CHECK(c.current == step - last_rx);
            }
        }
    }
}

TEST_CASE("packet queue delivers by time with ties broken by sender") {
    PacketQueue q;
    SUBCASE("empty queue yields nothing") {
        CHECK(q.pop_due(1000.0).empty());
    }
    SUBCASE("threshold test") {
        Packet a, b;
        a.sender = 0;
        a.deliver_at_ms = 100.0;
        b.sender = 1;
        b.deliver_at_ms = 120.0;
        q.push(b);
        q.push(a);
        const auto due = q.pop_due(110.0);
        REQUIRE(due.size() == 1);
        CHECK(due[0].sender == 0);
        CHECK(q.pending() == 1);
    }
    SUBCASE("simultaneous deliveries order by sender id") {
        Packet a, b;
        a.sender = 4;
        a.deliver_at_ms = 100.0;
        b.sender = 2;
        b.deliver_at_ms = 100.0;
        q.push(a);
        q.push(b);
        const auto due = q.pop_due(100.0);
        REQUIRE(due.size() == 2);
        CHECK(due[0].sender == 2);
        CHECK(due[1].sender == 4);
    }
}

TEST_CASE("per-sender FIFO repair raises an overtaking delivery time") {
    // Sent at t=0 with 200 ms latency, then at t=50 with 100 ms latency: the
    // second delivery is raised from 150 ms to 200 ms.
    PacketQueue q;
    Packet first, second;
    first.sender = 0;
    first.sent_step = 0;
    first.deliver_at_ms = 200.0;
    second.sender = 0;
    second.sent_step = 1;
    second.deliver_at_ms = 150.0;
    q.push(first);
    q.push(second);
    const auto due = q.pop_due(1000.0);
    REQUIRE(due.size() == 2);
    CHECK(due[0].sent_step == 0);
    CHECK(due[1].sent_step == 1);
    CHECK(due[1].deliver_at_ms == 200.0);
}

TEST_CASE("identical seeds reproduce the exact sample trace") {
    LinkParams params;
    std::vector<double> first, second;
    {
        Rng rng(0xF00D);
        for (int i = 0; i < 1000; ++i) first.push_back(sample_latency_ms(params, rng).total_ms());
    }
    {
        Rng rng(0xF00D);
        for (int i = 0; i < 1000; ++i) second.push_back(sample_latency_ms(params, rng).total_ms());
    }
    CHECK(first == second);
}
