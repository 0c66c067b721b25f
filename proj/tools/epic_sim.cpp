#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "epic/cli.hpp"
#include "epic/config.hpp"

namespace {

std::vector<double> parse_values(const std::string& csv) {
    std::vector<double> values;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        values.push_back(std::stod(item));
    }
    return values;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"epic-sim: seeded aerial-swarm coordination simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    std::string scheme_override;
    std::string seed_override;
    int trials_override = -1;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "configuration file (dotted key = value)");
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--seed", seed_override, "override scenario.master_seed");
        cmd->add_option("--trials", trials_override, "override scenario.trials");
        cmd->add_option("--scheme", scheme_override, "override scenario.scheme");
    };

    CLI::App* run = app.add_subcommand("run", "run the configured trials");
    add_common(run);

    CLI::App* sweep = app.add_subcommand("sweep", "sweep t-up or jitter for both schemes");
    add_common(sweep);
    std::string parameter;
    std::string values_csv;
    sweep->add_option("--param", parameter, "t-up or jitter")->required();
    sweep->add_option("--values", values_csv, "comma-separated sweep values")->required();

    CLI::App* validate = app.add_subcommand("validate", "run the built-in invariant suite");
    add_common(validate);

    CLI11_PARSE(app, argc, argv);

    epic::ScenarioConfig config;
    try {
        if (!config_path.empty()) {
            config = epic::load_config(config_path);
        }
        // Command-line overrides always win over file values.
        if (!seed_override.empty()) {
            epic::apply_config_entry(config, "scenario.master_seed", seed_override);
        }
        if (trials_override >= 0) {
            epic::apply_config_entry(config, "scenario.trials",
                                     std::to_string(trials_override));
        }
        if (!scheme_override.empty()) {
            epic::apply_config_entry(config, "scenario.scheme", scheme_override);
        }
        epic::validate_config(config);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return epic::kExitUsage;
    }

    try {
        if (run->parsed()) {
            return epic::cmd_run(config, out_dir, std::cout, std::cerr);
        }
        if (sweep->parsed()) {
            std::vector<double> values;
            try {
                values = parse_values(values_csv);
            } catch (const std::exception&) {
                std::cerr << "error: cannot parse sweep values '" << values_csv << "'\n";
                return epic::kExitUsage;
            }
            return epic::cmd_sweep(config, parameter, values, out_dir, std::cout, std::cerr);
        }
        return epic::cmd_validate(config, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return epic::kExitRuntime;
    }
}
