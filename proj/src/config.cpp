#include "epic/config.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace epic {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double result = 0.0;
    try {
        result = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw ConfigError("invalid numeric value for " + key + ": '" + value + "'");
    }
    if (pos != value.size()) {
        throw ConfigError("invalid numeric value for " + key + ": '" + value + "'");
    }
    return result;
}

int parse_int(const std::string& key, const std::string& value) {
    const double d = parse_double(key, value);
    const long long ll = std::llround(d);
    if (d != static_cast<double>(ll)) {
        throw ConfigError("expected an integer for " + key + ": '" + value + "'");
    }
    return static_cast<int>(ll);
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const std::uint64_t r = std::stoull(value, &pos);
        if (pos != value.size()) throw ConfigError("");
        return r;
    } catch (const std::exception&) {
        throw ConfigError("expected an unsigned integer for " + key + ": '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError("expected true/false for " + key + ": '" + value + "'");
}

Scheme parse_scheme(const std::string& key, const std::string& value) {
    if (value == "epic") return Scheme::kEpic;
    if (value == "traditional") return Scheme::kTraditional;
    throw ConfigError("expected epic or traditional for " + key + ": '" + value + "'");
}

using Setter = std::function<void(ScenarioConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& key_registry() {
    static const std::map<std::string, Setter> registry = {
        {"scenario.n_agents",
         [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.n_agents = parse_int(k, v);
         }},
        {"scenario.n_targets",
         [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.n_targets = parse_int(k, v);
         }},
        {"scenario.mission_steps",
         [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.mission_steps = parse_int(k, v);
         }},
        {"scenario.step_dt_s",
         [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.step_dt_s = parse_double(k, v);
         }},
        {"scenario.inference_hz",
         [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.inference_hz = parse_double(k, v);
         }},
        {"scenario.altitude_m",
         [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.altitude_m = parse_double(k, v);
         }},
        {"scenario.volume_x_m",
         [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.volume_x_m = parse_double(k, v);
         }},
        {"scenario.volume_y_m",
         [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.volume_y_m = parse_double(k, v);
         }},
        {"scenario.volume_z_m",
         [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.volume_z_m = parse_double(k, v);
         }},
        {"scenario.scheme",
         [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.scheme = parse_scheme(k, v);
         }},
        {"scenario.trials",
         [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.trials = parse_int(k, v);
         }},
        {"scenario.master_seed",
         [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.master_seed = parse_u64(k, v);
         }},
        {"kinematics.v_max_mps",
         [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.v_max_mps = parse_double(k, v);
         }},
        {"kinematics.a_max_mps2",
         [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.a_max_mps2 = parse_double(k, v);
         }},
        {"channel.a",
         [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.channel.a = parse_double(k, v);
         }},
        {"channel.b",
         [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.channel.b = parse_double(k, v);
         }},
        {"channel.f_c_hz",
         [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.channel.f_c_hz = parse_double(k, v);
         }},
        {"channel.eta_los_db",
         [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.channel.eta_los_db = parse_double(k, v);
         }},
        {"channel.eta_nlos_db",
         [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.channel.eta_nlos_db = parse_double(k, v);
         }},
        {"channel.p_tx_dbm",
         [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.channel.p_tx_dbm = parse_double(k, v);
         }},
        {"channel.noise_dbm",
         [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.channel.noise_dbm = parse_double(k, v);
         }},
        {"channel.sinr_threshold_db",
         [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.channel.sinr_threshold_db = parse_double(k, v);
         }},
        {"link.tau_base_ms",
         [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.link.tau_base_ms = parse_double(k, v);
         }},
        {"link.jitter_sigma_ms",
         [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.link.jitter_sigma_ms = parse_double(k, v);
         }},
        {"link.jitter_one_sided",
         [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.link.jitter_one_sided = parse_bool(k, v);
         }},
        {"link.t_up_steps",
         [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.link.t_up_steps = parse_int(k, v);
         }},
        {"stsi.alpha",
         [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.alpha = parse_double(k, v);
         }},
        {"stsi.tau_stsi_ms",
         [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.tau_stsi_ms = parse_double(k, v);
         }},
        {"stsi.tau_stsi_jitter_ms",
         [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.tau_stsi_jitter_ms = parse_double(k, v);
         }},
        {"stsi.spatial_consistency",
         [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.spatial_consistency = parse_bool(k, v);
         }},
        {"stsi.d_safe_m",
         [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.d_safe_m = parse_double(k, v);
         }},
    };
    return registry;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void apply_config_entry(ScenarioConfig& config, const std::string& key,
                        const std::string& value) {
    const auto& registry = key_registry();
    const auto it = registry.find(key);
    if (it == registry.end()) {
        throw ConfigError("unknown configuration key: " + key);
    }
    it->second(config, key, value);
}

ScenarioConfig parse_config_text(const std::string& text) {
    ScenarioConfig config;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) +
                              ": expected 'key = value', got '" + stripped + "'");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");
        }
        try {
            apply_config_entry(config, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    validate_config(config);
    return config;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

std::string serialize_config(const ScenarioConfig& c) {
    std::ostringstream out;
    out << "scenario.n_agents = " << c.n_agents << "\n";
    out << "scenario.n_targets = " << c.n_targets << "\n";
    out << "scenario.mission_steps = " << c.mission_steps << "\n";
    out << "scenario.step_dt_s = " << format_double(c.step_dt_s) << "\n";
    out << "scenario.inference_hz = " << format_double(c.inference_hz) << "\n";
    out << "scenario.altitude_m = " << format_double(c.altitude_m) << "\n";
    out << "scenario.volume_x_m = " << format_double(c.volume_x_m) << "\n";
    out << "scenario.volume_y_m = " << format_double(c.volume_y_m) << "\n";
    out << "scenario.volume_z_m = " << format_double(c.volume_z_m) << "\n";
    out << "scenario.scheme = " << scheme_name(c.scheme) << "\n";
    out << "scenario.trials = " << c.trials << "\n";
    out << "scenario.master_seed = " << c.master_seed << "\n";
    out << "kinematics.v_max_mps = " << format_double(c.v_max_mps) << "\n";
    out << "kinematics.a_max_mps2 = " << format_double(c.a_max_mps2) << "\n";
    out << "channel.a = " << format_double(c.channel.a) << "\n";
    out << "channel.b = " << format_double(c.channel.b) << "\n";
    out << "channel.f_c_hz = " << format_double(c.channel.f_c_hz) << "\n";
    out << "channel.eta_los_db = " << format_double(c.channel.eta_los_db) << "\n";
    out << "channel.eta_nlos_db = " << format_double(c.channel.eta_nlos_db) << "\n";
    out << "channel.p_tx_dbm = " << format_double(c.channel.p_tx_dbm) << "\n";
    out << "channel.noise_dbm = " << format_double(c.channel.noise_dbm) << "\n";
    out << "channel.sinr_threshold_db = " << format_double(c.channel.sinr_threshold_db) << "\n";
    out << "link.tau_base_ms = " << format_double(c.link.tau_base_ms) << "\n";
    out << "link.jitter_sigma_ms = " << format_double(c.link.jitter_sigma_ms) << "\n";
    out << "link.jitter_one_sided = " << (c.link.jitter_one_sided ? "true" : "false") << "\n";
    out << "link.t_up_steps = " << c.link.t_up_steps << "\n";
    out << "stsi.alpha = " << format_double(c.alpha) << "\n";
    out << "stsi.tau_stsi_ms = " << format_double(c.tau_stsi_ms) << "\n";
    out << "stsi.tau_stsi_jitter_ms = " << format_double(c.tau_stsi_jitter_ms) << "\n";
    out << "stsi.spatial_consistency = " << (c.spatial_consistency ? "true" : "false") << "\n";
    out << "stsi.d_safe_m = " << format_double(c.d_safe_m) << "\n";
    return out.str();
}

}  // namespace epic
