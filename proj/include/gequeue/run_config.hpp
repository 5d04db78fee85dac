#ifndef GEQUEUE_RUN_CONFIG_HPP
#define GEQUEUE_RUN_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "gequeue/qbd_solver.hpp"
#include "gequeue/simulator.hpp"

namespace gequeue::cli {

inline constexpr const char* kSchemaVersion = "gequeue/1";

// Fully resolved run configuration. The defaults are the GSM-like demo
// parameters used throughout the README.
struct RunConfig {
    // channel
    double alpha = 0.02;
    double beta = 0.005;
    double eps_b = 0.49;
    double eps_g = 0.0025;
    // code
    int blocklength = 114;
    int info_bits = 83;
    // traffic
    double gamma = 0.25;
    double rho = 1.0 / 195.0;
    // solver
    double tol = 1e-13;
    std::uint64_t max_iter = 1000000;
    // analysis
    std::vector<int> tau_list = {5, 10, 15, 20, 25};
    int q_max_report = 10;
    double slot_seconds = 0.004615;
    // simulation
    std::uint64_t blocks = 1000000;
    std::uint64_t warmup_blocks = 10000;
    std::uint64_t seed = 1;
    std::string fidelity = "analytical_failure";
    // sweep
    std::string sweep_axis = "code_rate";  // "code_rate" or "surface"
    int k_min = 60;
    int k_max = 110;
    std::vector<double> arrival_grid = {47.5, 50.0, 52.5, 55.0, 57.5, 60.0};

    ChannelParams channel() const { return {alpha, beta, eps_b, eps_g}; }
    CodeConfig code() const { return {blocklength, info_bits}; }
    TrafficParams traffic() const { return {gamma, rho}; }
    SolverOptions solver() const { return {tol, max_iter}; }
    DecodeFidelity decode_fidelity() const;
    SimConfig sim_config() const;
};

// Parse a bare config object; unknown keys anywhere are rejected.
RunConfig config_from_json(const nlohmann::json& j);

// Load from a file: a plain JSON config, a JSON report with an embedded
// "config" object, or a CSV whose first line is "# config: {...}". Every
// output this tool writes can therefore be re-run as-is.
RunConfig load_config_file(const std::string& path);

// The resolved configuration, round-trippable through config_from_json.
nlohmann::json config_to_json(const RunConfig& config);

}  // namespace gequeue::cli

#endif
