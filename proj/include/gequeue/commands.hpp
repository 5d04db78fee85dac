#ifndef GEQUEUE_COMMANDS_HPP
#define GEQUEUE_COMMANDS_HPP

#include <optional>
#include <string>

#include "gequeue/run_config.hpp"

namespace gequeue::cli {

enum ExitCode : int {
    kOk = 0,
    kConfigError = 2,
    kUnstable = 3,
    kSingular = 4,
    kNoConvergence = 5,
    kIoError = 6,
};

// Each command returns a JSON report embedding the resolved config. CSV
// renderings carry the same data, one row per grid point, with the config in
// a leading comment so outputs are re-runnable.
nlohmann::json cmd_analyze(const RunConfig& config);

nlohmann::json cmd_sweep(const RunConfig& config);
std::string sweep_to_csv(const nlohmann::json& report);

nlohmann::json cmd_simulate(const RunConfig& config);
std::string simulate_to_csv(const nlohmann::json& report);

// Analysis vs simulation on identical parameters. When prior_sim_report is
// given (a cmd_simulate output), its empirical side is reused after checking
// that the embedded config matches; otherwise a fresh simulation runs.
nlohmann::json cmd_compare(const RunConfig& config,
                           const std::optional<nlohmann::json>& prior_sim_report);

// Structured error record, written wherever the report would have gone.
nlohmann::json error_record(const std::string& kind, const std::string& message,
                            const nlohmann::json& detail = nlohmann::json::object());

void write_text(const std::string& text, const std::string& out_path);  // "" -> stdout

}  // namespace gequeue::cli

#endif
