#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rpde {

// Config schema violation; `field` is the offending JSON path. Maps to
// process exit code 2.
struct ConfigError : std::runtime_error {
    std::string field;
    ConfigError(std::string f, const std::string& msg)
        : std::runtime_error(f + ": " + msg), field(std::move(f)) {}
};

// Fully resolved experiment description. Every field has a default; the
// resolved form is persisted next to the artifacts and hashed into every
// file header.
struct ExperimentConfig {
    std::string experiment = "clt";  // lift-check|solve|clt|ito-vs-strat|wong-zakai|mdp|suite
    std::string equation = "heat";   // heat|reaction-diffusion|llg
    int space_dim = 1;
    int space_n = 128;
    double horizon = 1.0;
    std::size_t steps = 1000;
    std::string driver_profile = "one";
    double driver_param = 0.5;
    int channels = 1;
    std::uint64_t seed = 42;
    int refinement = 32;
    std::string u0_profile = "sin";
    double u0_param = 0.5;
    std::vector<double> eps;  // default: 2^-4 .. 2^-12
    double lambda_exponent = 0.25;
    double delta = 0.1;
    std::size_t samples = 500;
    double min_slope = 0.4;
    std::string out_dir = "runs";
    int threads = 1;

    static ExperimentConfig from_json_text(const std::string& text);
    static ExperimentConfig from_file(const std::string& path);
    std::string resolved_text() const;  // canonical JSON, input to the config hash
    void validate() const;
};

struct RunRecord {
    ExperimentConfig config;
    std::string hash;
    int exit_code = 0;  // 0 pass, 1 numeric failure, 2 schema violation
    std::vector<std::string> artifacts;
    std::vector<std::string> summary;
};

// Dispatches the experiment, writes artifacts under config.out_dir, returns
// the record. Throws nothing; failures are encoded in exit_code + summary.
RunRecord run(const ExperimentConfig& config);
RunRecord run_file(const std::string& config_path);

}  // namespace rpde
