#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "gequeue/commands.hpp"

namespace {

using gequeue::cli::RunConfig;

struct Overrides {
    std::optional<std::string> config_path;
    std::optional<double> alpha, beta, eps_b, eps_g, gamma, rho, tol;
    std::optional<int> blocklength, info_bits;
    std::optional<std::vector<int>> tau_list;
    std::optional<std::uint64_t> seed, blocks, max_iter;
    std::optional<std::string> fidelity;
    std::string out_path;
};

void add_common_options(CLI::App* cmd, Overrides& ov) {
    cmd->add_option("--config", ov.config_path,
                    "Config file: JSON config, JSON report, or CSV with embedded config");
    cmd->add_option("--alpha", ov.alpha, "b->g transition probability per channel use");
    cmd->add_option("--beta", ov.beta, "g->b transition probability per channel use");
    cmd->add_option("--eps-b", ov.eps_b, "per-bit erasure probability in the bad state");
    cmd->add_option("--eps-g", ov.eps_g, "per-bit erasure probability in the good state");
    cmd->add_option("--blocklength", ov.blocklength, "codeword length N");
    cmd->add_option("--info-bits", ov.info_bits, "information bits per codeword K");
    cmd->add_option("--gamma", ov.gamma, "packet arrival probability per block");
    cmd->add_option("--rho", ov.rho, "geometric packet-length parameter");
    cmd->add_option("--tau-list", ov.tau_list, "queue thresholds, e.g. --tau-list 5 10 15")
        ->delimiter(',');
    cmd->add_option("--seed", ov.seed, "simulation seed");
    cmd->add_option("--blocks", ov.blocks, "blocks to simulate");
    cmd->add_option("--fidelity", ov.fidelity,
                    "decode model: analytical_failure or matrix_sampling");
    cmd->add_option("--tol", ov.tol, "rate-matrix iteration tolerance");
    cmd->add_option("--max-iter", ov.max_iter, "rate-matrix iteration cap");
    cmd->add_option("--out", ov.out_path, "output path (default: stdout)");
}

RunConfig resolve(const Overrides& ov) {
    RunConfig c =
        ov.config_path ? gequeue::cli::load_config_file(*ov.config_path) : RunConfig{};
    if (ov.alpha) c.alpha = *ov.alpha;
    if (ov.beta) c.beta = *ov.beta;
    if (ov.eps_b) c.eps_b = *ov.eps_b;
    if (ov.eps_g) c.eps_g = *ov.eps_g;
    if (ov.blocklength) c.blocklength = *ov.blocklength;
    if (ov.info_bits) c.info_bits = *ov.info_bits;
    if (ov.gamma) c.gamma = *ov.gamma;
    if (ov.rho) c.rho = *ov.rho;
    if (ov.tau_list) c.tau_list = *ov.tau_list;
    if (ov.seed) c.seed = *ov.seed;
    if (ov.blocks) c.blocks = *ov.blocks;
    if (ov.fidelity) c.fidelity = *ov.fidelity;
    if (ov.tol) c.tol = *ov.tol;
    if (ov.max_iter) c.max_iter = *ov.max_iter;
    return c;
}

bool wants_csv(const std::string& path) {
    return path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace gequeue::cli;

    CLI::App app{"Queueing analysis of random linear codes over a two-state erasure channel"};
    app.require_subcommand(1);

    Overrides ov;
    std::string against_path;

    CLI::App* analyze = app.add_subcommand(
        "analyze", "Stationary queue distribution, tails, decay rate and diagnostics");
    add_common_options(analyze, ov);

    CLI::App* sweep = app.add_subcommand(
        "sweep", "Code-rate or arrival-rate grid sweep (CSV when --out ends in .csv)");
    add_common_options(sweep, ov);

    CLI::App* simulate = app.add_subcommand(
        "simulate", "Monte Carlo simulation of the exact channel/queue chain");
    add_common_options(simulate, ov);

    CLI::App* compare =
        app.add_subcommand("compare", "Run analysis and simulation; report per-tau z-scores");
    add_common_options(compare, ov);
    compare->add_option("--against", against_path,
                        "reuse a previous 'simulate' JSON report instead of re-running");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return kConfigError;
    }

    std::string out_path = ov.out_path;
    try {
        const RunConfig config = resolve(ov);
        nlohmann::json report;
        std::string rendered;

        if (analyze->parsed()) {
            report = cmd_analyze(config);
        } else if (sweep->parsed()) {
            report = cmd_sweep(config);
            if (wants_csv(out_path)) rendered = sweep_to_csv(report);
        } else if (simulate->parsed()) {
            report = cmd_simulate(config);
            if (wants_csv(out_path)) rendered = simulate_to_csv(report);
        } else if (compare->parsed()) {
            std::optional<nlohmann::json> prior;
            if (!against_path.empty()) {
                std::ifstream in(against_path);
                if (!in) throw std::ios_base::failure("cannot open " + against_path);
                prior = nlohmann::json::parse(in);
            }
            report = cmd_compare(config, prior);
        }

        if (rendered.empty()) rendered = report.dump(2);
        write_text(rendered, out_path);

        if (compare->parsed() && !report.at("all_within_3_sigma").get<bool>())
            return 1;  // disagreement is the compare command's failure mode
        return kOk;
    } catch (const gequeue::UnstableSystemError& e) {
        write_text(error_record("unstable_system", e.what(),
                                {{"stability_margin", e.margin()}})
                       .dump(2),
                   out_path);
        return kUnstable;
    } catch (const gequeue::SingularMatrixError& e) {
        write_text(error_record("singular_matrix", e.what(), {{"matrix", e.which()}}).dump(2),
                   out_path);
        return kSingular;
    } catch (const gequeue::ConvergenceError& e) {
        write_text(error_record("no_convergence", e.what(),
                                {{"iterations", e.iterations()}, {"residual", e.residual()}})
                       .dump(2),
                   out_path);
        return kNoConvergence;
    } catch (const std::ios_base::failure& e) {
        std::cerr << error_record("io_error", e.what()).dump(2) << '\n';
        return kIoError;
    } catch (const std::exception& e) {
        write_text(error_record("config_error", e.what()).dump(2), out_path);
        return kConfigError;
    }
}
