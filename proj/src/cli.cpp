#include "epic/cli.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "epic/config.hpp"
#include "epic/report.hpp"

namespace epic {

namespace {

// Digest of the built-in determinism scenario's ticks.csv; frozen once the
// numeric behavior of the engine is pinned. Any change to seed derivation,
// sampling order or output formatting must update it deliberately.
constexpr std::uint64_t kGoldenTicksHash = 0x0ULL;

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

bool write_file(const std::string& path, const std::string& contents, std::ostream& err) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        err << "error: cannot open " << path << " for writing\n";
        return false;
    }
    out << contents;
    out.close();
    if (!out) {
        err << "error: failed writing " << path << "\n";
        return false;
    }
    return true;
}

bool prepare_out_dir(const std::string& out_dir, std::ostream& err) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        err << "error: cannot create output directory " << out_dir << ": " << ec.message()
            << "\n";
        return false;
    }
    return true;
}

ScenarioConfig determinism_probe_config() {
    ScenarioConfig cfg;
    cfg.n_agents = 3;
    cfg.n_targets = 8;
    cfg.mission_steps = 25;
    cfg.trials = 2;
    cfg.link.t_up_steps = 5;
    cfg.master_seed = 0x5eeded;
    return cfg;
}

using CheckFn = bool (*)(const ScenarioConfig&, std::string&);

bool check_channel_monotonicity(const ScenarioConfig& cfg, std::string& detail) {
    double prev = -1.0;
    for (int i = 1; i <= 900; ++i) {
        const double theta = static_cast<double>(i) * 0.1;
        const double p = p_los(theta, cfg.channel);
        if (p < prev) {
            detail = "p_los decreased at theta=" + csv_number(theta);
            return false;
        }
        prev = p;
    }
    prev = -1.0;
    for (int i = 1; i <= 500; ++i) {
        const double d = static_cast<double>(i) * 10.0;
        const double loss = path_loss_db(d, 45.0, cfg.channel);
        if (loss <= prev) {
            detail = "path_loss_db not increasing at d=" + csv_number(d);
            return false;
        }
        prev = loss;
    }
    return true;
}

bool check_stsi_alpha1_oracle(const ScenarioConfig& cfg, std::string& detail) {
    StsiParams params = cfg.make_stsi();
    params.alpha = 1.0;
    Rng rng(0xA1F0);
    for (int i = 0; i < 2000; ++i) {
        BeliefEntry entry;
        entry.anchor_state.position = {rng.uniform(400.0, 1400.0), rng.uniform(400.0, 1400.0),
                                       rng.uniform(20.0, 80.0)};
        const double speed = rng.uniform(0.0, params.limits.v_max * 0.2);
        entry.anchor_state.velocity = {speed * (2.0 * rng.uniform01() - 1.0),
                                       speed * (2.0 * rng.uniform01() - 1.0),
                                       speed * 0.1 * (2.0 * rng.uniform01() - 1.0)};
        entry.anchor_velocity_prev = entry.anchor_state.velocity;
        entry.aoi.current = rng.uniform_int(1, 50);
        entry.belief = entry.anchor_state;

        const BeliefEntry inferred = stsi_infer(entry, params);
        Vec3 oracle = entry.anchor_state.position;
        for (int k = 0; k < entry.aoi.current; ++k) {
            oracle += entry.anchor_state.velocity * params.dt;
        }
        if (distance(inferred.belief.position, oracle) > 1e-9) {
            detail = "dead-reckoning mismatch at case " + std::to_string(i);
            return false;
        }
    }
    return true;
}

bool check_guardrail_feasibility(const ScenarioConfig& cfg, std::string& detail) {
    const KinematicLimits limits = cfg.make_limits();
    Rng rng(0x6A4D);
    for (int i = 0; i < 20000; ++i) {
        const Vec3 prev = {rng.uniform(-limits.v_max, limits.v_max) * 0.577,
                           rng.uniform(-limits.v_max, limits.v_max) * 0.577,
                           rng.uniform(-limits.v_max, limits.v_max) * 0.577};
        const Vec3 proposed = {rng.uniform(-100.0, 100.0), rng.uniform(-100.0, 100.0),
                               rng.uniform(-100.0, 100.0)};
        const Vec3 clamped = clamp_manifold(proposed, prev, limits);
        if (clamped.norm() > limits.v_max + 1e-9 ||
            (clamped - prev).norm() > limits.a_max * limits.dt + 1e-9) {
            detail = "constraint violated at case " + std::to_string(i);
            return false;
        }
    }
    return true;
}

bool check_determinism_hash(const ScenarioConfig&, std::string& detail) {
    const ScenarioConfig probe = determinism_probe_config();
    const std::string first = build_ticks_csv(run_trials(probe));
    const std::string second = build_ticks_csv(run_trials(probe));
    if (first != second) {
        detail = "repeated runs diverged";
        return false;
    }
    const std::uint64_t hash = fnv1a_hash(first);
    if (hash != kGoldenTicksHash) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "0x%016llx",
                      static_cast<unsigned long long>(hash));
        detail = std::string("ticks hash ") + buf + " does not match the frozen value";
        return false;
    }
    return true;
}

}  // namespace

int cmd_run(const ScenarioConfig& config, const std::string& out_dir, std::ostream& out,
            std::ostream& err) {
    try {
        validate_config(config);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    if (!prepare_out_dir(out_dir, err)) return kExitRuntime;

    std::vector<TrialResult> trials;
    try {
        trials = run_trials(config);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }

    const std::string ticks = build_ticks_csv(trials);
    const std::string summary = build_summary_csv(trials, config);
    const std::string manifest = build_manifest(config, kToolVersion, utc_timestamp(),
                                                {"ticks.csv", "summary.csv"});

    const std::filesystem::path dir(out_dir);
    if (!write_file((dir / "ticks.csv").string(), ticks, err)) return kExitRuntime;
    if (!write_file((dir / "summary.csv").string(), summary, err)) return kExitRuntime;
    if (!write_file((dir / "manifest.txt").string(), manifest, err)) return kExitRuntime;

    out << render_run_table(trials, config);
    return kExitOk;
}

int cmd_sweep(const ScenarioConfig& config, const std::string& parameter,
              const std::vector<double>& values, const std::string& out_dir,
              std::ostream& out, std::ostream& err) {
    SweepParameter param;
    if (parameter == "t-up") {
        param = SweepParameter::kTUp;
    } else if (parameter == "jitter") {
        param = SweepParameter::kJitterSigma;
    } else {
        err << "error: unknown sweep parameter '" << parameter
            << "' (expected t-up or jitter)\n";
        return kExitUsage;
    }
    if (values.empty()) {
        err << "error: sweep requires at least one value\n";
        return kExitUsage;
    }
    for (double v : values) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            err << "error: sweep values must be nonnegative numerics\n";
            return kExitUsage;
        }
        if (param == SweepParameter::kTUp && v != std::floor(v)) {
            err << "error: t-up sweep values must be integers\n";
            return kExitUsage;
        }
    }
    try {
        validate_config(config);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    if (!prepare_out_dir(out_dir, err)) return kExitRuntime;

    std::vector<SweepCell> cells;
    try {
        cells = sweep(config, param, values);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }

    std::string values_note = "sweep.csv (parameter=" + parameter + " values=";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) values_note += ",";
        values_note += csv_number(values[i]);
    }
    values_note += ")";
    const std::string manifest =
        build_manifest(config, kToolVersion, utc_timestamp(), {values_note});

    const std::filesystem::path dir(out_dir);
    if (!write_file((dir / "sweep.csv").string(), build_sweep_csv(cells, parameter, config),
                    err)) {
        return kExitRuntime;
    }
    if (!write_file((dir / "manifest.txt").string(), manifest, err)) return kExitRuntime;

    out << render_sweep_table(cells, parameter);
    return kExitOk;
}

int cmd_validate(const ScenarioConfig& config, std::ostream& out, std::ostream& err) {
    try {
        validate_config(config);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    struct Check {
        const char* name;
        CheckFn fn;
    };
    const Check checks[] = {
        {"channel_monotonicity", &check_channel_monotonicity},
        {"stsi_alpha1_oracle", &check_stsi_alpha1_oracle},
        {"guardrail_feasibility", &check_guardrail_feasibility},
        {"determinism_hash", &check_determinism_hash},
    };

    bool all_ok = true;
    for (const Check& check : checks) {
        std::string detail;
        const bool ok = check.fn(config, detail);
        out << (ok ? "[PASS] " : "[FAIL] ") << check.name;
        if (!ok && !detail.empty()) out << ": " << detail;
        out << "\n";
        all_ok = all_ok && ok;
    }
    return all_ok ? kExitOk : kExitValidation;
}

}  // namespace epic
