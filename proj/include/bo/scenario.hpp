#ifndef BO_SCENARIO_HPP
#define BO_SCENARIO_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace bo {

/// Raised for malformed configs (unknown scenario, unknown key, bad value);
/// mapped to exit code 2 by the CLI.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A scenario name plus validated key/value settings.  Unknown keys are
/// rejected against the per-scenario schema; randomized scenarios require a
/// seed.
struct ScenarioConfig {
    std::string name;
    std::map<std::string, std::string> settings;

    static ScenarioConfig from_file(const std::string& path);
    static ScenarioConfig from_name(const std::string& name);

    void set(const std::string& key, const std::string& value);
    void validate() const;

    std::string get(const std::string& key, const std::string& fallback) const;
    double get_num(const std::string& key, double fallback) const;
    std::uint64_t seed() const;
};

struct ScenarioResult {
    int exit_code = 0; // 0 success, 1 assertion failure, 2 config error
    std::vector<std::string> output_files;
    std::string failure;
};

/// Runs the scenario, writing CSV/report files under out_dir.  Outputs are
/// byte-identical for identical (config, seed).
ScenarioResult run_scenario(const ScenarioConfig& config, const std::string& out_dir);

} // namespace bo

#endif
