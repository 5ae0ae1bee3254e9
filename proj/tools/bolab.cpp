// Command-line runner for the bounded-oscillation toolkit: builds fixtures,
// evaluates operators and emits CSV reports for reproducible experiments.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bo/scenario.hpp"

int main(int argc, char** argv) {
    CLI::App app{"bounded-oscillation operator lab"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run a scenario and write CSV reports");
    std::string config_path;
    std::string scenario_name;
    std::vector<std::string> overrides;
    std::string out_dir = ".";
    std::string seed;
    run->add_option("--config", config_path, "scenario config file (scenario v1 format)");
    run->add_option("--scenario", scenario_name, "scenario name");
    run->add_option("--set", overrides, "key=value setting override")->take_all();
    run->add_option("--out", out_dir, "output directory for CSV files");
    run->add_option("--seed", seed, "seed for randomized scenarios");

    CLI11_PARSE(app, argc, argv);

    try {
        bo::ScenarioConfig config = [&]() {
            if (!config_path.empty() && !scenario_name.empty())
                throw bo::ConfigError("pass either --config or --scenario, not both");
            if (!config_path.empty()) return bo::ScenarioConfig::from_file(config_path);
            if (!scenario_name.empty()) return bo::ScenarioConfig::from_name(scenario_name);
            throw bo::ConfigError("one of --config or --scenario is required");
        }();
        for (const std::string& kv : overrides) {
            auto eq = kv.find('=');
            if (eq == std::string::npos || eq == 0)
                throw bo::ConfigError("malformed --set (expected key=value): " + kv);
            config.set(kv.substr(0, eq), kv.substr(eq + 1));
        }
        if (!seed.empty()) config.set("seed", seed);
        config.validate();

        bo::ScenarioResult result = bo::run_scenario(config, out_dir);
        for (const std::string& file : result.output_files)
            std::printf("wrote %s\n", file.c_str());
        if (result.exit_code != 0)
            std::fprintf(stderr, "FAIL: %s\n", result.failure.c_str());
        return result.exit_code;
    } catch (const bo::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
