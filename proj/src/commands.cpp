#include "gequeue/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "gequeue/sweep.hpp"

namespace gequeue::cli {

namespace {

// 17 significant digits: doubles round-trip losslessly through the CSV.
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

nlohmann::json mat_json(const Mat2& m) {
    return nlohmann::json::array({{m(0, 0), m(0, 1)}, {m(1, 0), m(1, 1)}});
}

nlohmann::json base_report(const char* command, const RunConfig& config) {
    return nlohmann::json{{"schema_version", kSchemaVersion},
                          {"command", command},
                          {"config", config_to_json(config)}};
}

std::string csv_header(const nlohmann::json& report) {
    return "# config: " + report.at("config").dump() + "\n# schema_version: " +
           std::string(kSchemaVersion) + "\n";
}

}  // namespace

nlohmann::json cmd_analyze(const RunConfig& config) {
    const ChannelParams channel = config.channel();
    const CodeConfig code = config.code();
    const TrafficParams traffic = config.traffic();

    const ErasureJoint joint(channel, code.blocklength);
    const QbdBlocks blocks = build_blocks(channel, code, traffic, joint);
    const StationarySolution sol = solve_stationary(blocks, channel, config.solver());

    nlohmann::json report = base_report("analyze", config);
    const Vec2 nu = channel_stationary(channel);
    report["channel"] = {{"stationary", {nu[kBad], nu[kGood]}},
                         {"memory", channel_memory(channel)},
                         {"avg_erasure", average_erasure_probability(channel)}};
    report["segment_completion_prob"] = segment_completion_prob(traffic, code);
    report["avg_failure_probability"] = avg_failure_probability(code, joint, nu);
    report["stability_margin"] = sol.margin;
    report["ill_conditioned"] = sol.ill_conditioned;
    report["solver"] = {{"iterations", sol.iterations_used},
                        {"residual", sol.residual},
                        {"tol", config.tol},
                        {"max_iter", config.max_iter}};
    report["rate_matrix"] = mat_json(sol.rate_matrix);
    report["boundary_matrix"] = mat_json(sol.boundary_matrix);
    report["spectral_radius"] = sol.spectral_radius_r;
    report["decay_rate"] = decay_rate(sol);  // natural log; -inf serializes as null
    report["mean_queue_length"] = mean_queue_length(sol);

    nlohmann::json levels = nlohmann::json::array();
    for (int q = 0; q <= config.q_max_report; ++q) {
        const Vec2 pi = level_distribution(sol, q);
        levels.push_back(
            {{"q", q}, {"pi_b", pi[kBad]}, {"pi_g", pi[kGood]}, {"mass", pi.sum()}});
    }
    report["levels"] = levels;

    nlohmann::json tails = nlohmann::json::array();
    for (int tau : config.tau_list)
        tails.push_back({{"tau", tau}, {"probability", tail_probability(sol, tau)}});
    report["tails"] = tails;

    const RateReport rates = rate_conversions(channel, code, traffic, config.slot_seconds);
    report["rate_conversions"] = {
        {"slot_seconds", rates.slot_seconds},
        {"arrival_bits_per_sec", rates.arrival_bits_per_sec},
        {"ergodic_capacity_bits_per_sec", rates.ergodic_capacity_bits_per_sec},
        {"shannon_limit_bits_per_block", rates.shannon_limit_bits_per_block},
        {"avg_erasure", rates.avg_erasure}};
    return report;
}

nlohmann::json cmd_sweep(const RunConfig& config) {
    nlohmann::json report = base_report("sweep", config);
    report["axis"] = config.sweep_axis;

    if (config.sweep_axis == "code_rate") {
        SweepSpec spec{config.channel(), config.blocklength, config.traffic(),
                       config.k_min,     config.k_max,       config.tau_list,
                       config.solver()};
        const CodeRateSweepResult res = sweep_code_rate(spec);

        report["tau_list"] = res.tau_list;
        nlohmann::json rows = nlohmann::json::array();
        for (const CodeRateRow& row : res.rows) {
            nlohmann::json r = {{"info_bits", row.info_bits},
                                {"stable", row.stable},
                                {"stability_margin", row.margin},
                                {"decay_rate", row.decay},
                                {"mean_queue_length", row.mean_queue},
                                {"throughput_bits_per_block", row.throughput},
                                {"iterations", row.iterations},
                                {"residual", row.residual}};
            nlohmann::json tails = nlohmann::json::array();
            for (std::size_t i = 0; i < res.tau_list.size(); ++i)
                tails.push_back(row.stable ? nlohmann::json(row.tail[i])
                                           : nlohmann::json());
            r["tail"] = tails;
            rows.push_back(std::move(r));
        }
        report["rows"] = rows;

        nlohmann::json argmin = nlohmann::json::array();
        for (std::size_t i = 0; i < res.tau_list.size(); ++i)
            argmin.push_back({{"tau", res.tau_list[i]},
                              {"info_bits", res.argmin_tail[i]},
                              {"tied", static_cast<bool>(res.argmin_tail_tied[i])}});
        report["argmin_tail"] = argmin;
        report["argmax_decay"] = res.argmax_decay;
        report["argmax_throughput"] = res.argmax_throughput;
        return report;
    }

    if (config.sweep_axis == "surface") {
        SurfaceSpec spec{config.channel(), config.blocklength, config.gamma,
                         config.k_min,     config.k_max,       config.arrival_grid,
                         config.solver()};
        nlohmann::json rows = nlohmann::json::array();
        for (const SurfacePoint& pt : decay_surface(spec))
            rows.push_back({{"info_bits", pt.info_bits},
                            {"arrival_bits_per_block", pt.arrival_bits_per_block},
                            {"gamma", pt.gamma},
                            {"rho", pt.rho},
                            {"stable", pt.stable},
                            {"stability_margin", pt.margin},
                            {"tail_decay", pt.tail_decay}});
        report["rows"] = rows;
        return report;
    }

    throw std::invalid_argument("unknown sweep axis '" + config.sweep_axis +
                                "' (expected code_rate or surface)");
}

std::string sweep_to_csv(const nlohmann::json& report) {
    std::ostringstream out;
    out << csv_header(report);

    if (report.at("axis") == "code_rate") {
        out << "info_bits,stable,stability_margin";
        for (int tau : report.at("tau_list")) out << ",tail_" << tau;
        out << ",decay_rate,mean_queue_length,throughput_bits_per_block,iterations,residual\n";
        for (const auto& row : report.at("rows")) {
            out << row.at("info_bits").get<int>() << ','
                << (row.at("stable").get<bool>() ? 1 : 0) << ','
                << fmt(row.at("stability_margin").get<double>());
            for (const auto& t : row.at("tail"))
                out << ',' << (t.is_null() ? "" : fmt(t.get<double>()));
            const bool stable = row.at("stable").get<bool>();
            auto opt = [&](const char* key) {
                return stable ? fmt(row.at(key).get<double>()) : std::string();
            };
            out << ',' << opt("decay_rate") << ',' << opt("mean_queue_length") << ','
                << fmt(row.at("throughput_bits_per_block").get<double>()) << ','
                << row.at("iterations").get<std::uint64_t>() << ',' << opt("residual")
                << '\n';
        }
        return out.str();
    }

    out << "info_bits,arrival_bits_per_block,gamma,rho,stable,stability_margin,tail_decay\n";
    for (const auto& row : report.at("rows")) {
        out << row.at("info_bits").get<int>() << ','
            << fmt(row.at("arrival_bits_per_block").get<double>()) << ','
            << fmt(row.at("gamma").get<double>()) << ',' << fmt(row.at("rho").get<double>())
            << ',' << (row.at("stable").get<bool>() ? 1 : 0) << ','
            << fmt(row.at("stability_margin").get<double>()) << ','
            << (row.at("stable").get<bool>() ? fmt(row.at("tail_decay").get<double>())
                                             : std::string())
            << '\n';
    }
    return out.str();
}

namespace {

nlohmann::json sim_result_json(const SimResult& sim) {
    nlohmann::json levels = nlohmann::json::array();
    for (std::size_t q = 0; q < sim.level_masses.size(); ++q)
        levels.push_back({{"q", q},
                          {"freq_b", sim.level_masses[q][kBad]},
                          {"freq_g", sim.level_masses[q][kGood]}});
    nlohmann::json tails = nlohmann::json::array();
    for (const TailEstimate& t : sim.tails)
        tails.push_back(
            {{"tau", t.tau}, {"frequency", t.frequency}, {"std_error", t.std_error}});
    return nlohmann::json{{"seed", sim.seed},
                          {"recorded_blocks", sim.recorded_blocks},
                          {"decode_attempts", sim.decode_attempts},
                          {"decode_failures", sim.decode_failures},
                          {"mean_queue", sim.mean_queue},
                          {"mean_queue_std_error", sim.mean_queue_std_error},
                          {"state_b_frequency", sim.state_b_frequency()},
                          {"levels", levels},
                          {"tails", tails}};
}

}  // namespace

nlohmann::json cmd_simulate(const RunConfig& config) {
    const SimResult sim = simulate(config.sim_config());
    nlohmann::json report = base_report("simulate", config);
    report["result"] = sim_result_json(sim);
    return report;
}

std::string simulate_to_csv(const nlohmann::json& report) {
    // long format: one (kind, key) observation per row
    std::ostringstream out;
    out << csv_header(report) << "kind,key,value,std_error\n";
    const auto& res = report.at("result");
    for (const auto& t : res.at("tails"))
        out << "tail," << t.at("tau").get<int>() << ','
            << fmt(t.at("frequency").get<double>()) << ','
            << fmt(t.at("std_error").get<double>()) << '\n';
    for (const auto& lvl : res.at("levels")) {
        out << "level_mass_b," << lvl.at("q").get<std::uint64_t>() << ','
            << fmt(lvl.at("freq_b").get<double>()) << ",\n";
        out << "level_mass_g," << lvl.at("q").get<std::uint64_t>() << ','
            << fmt(lvl.at("freq_g").get<double>()) << ",\n";
    }
    out << "mean_queue,," << fmt(res.at("mean_queue").get<double>()) << ','
        << fmt(res.at("mean_queue_std_error").get<double>()) << '\n';
    return out.str();
}

nlohmann::json cmd_compare(const RunConfig& config,
                           const std::optional<nlohmann::json>& prior_sim_report) {
    nlohmann::json report = base_report("compare", config);

    nlohmann::json sim_side;
    if (prior_sim_report) {
        const nlohmann::json& prior = *prior_sim_report;
        if (!prior.is_object() || !prior.contains("config") || !prior.contains("result"))
            throw std::invalid_argument("prior simulation report lacks config/result");
        const nlohmann::json mine = config_to_json(config);
        for (const char* section : {"channel", "code", "traffic"})
            if (prior.at("config").at(section) != mine.at(section))
                throw std::invalid_argument(
                    std::string("config mismatch against prior simulation: section '") +
                    section + "' differs");
        sim_side = prior.at("result");
    } else {
        sim_side = sim_result_json(simulate(config.sim_config()));
    }

    const nlohmann::json analysis = cmd_analyze(config);

    // z-score per threshold; the batch-means error gets a binomial floor at
    // the analytical value so zero-hit tails do not divide by zero.
    const std::uint64_t n = sim_side.at("recorded_blocks").get<std::uint64_t>();
    nlohmann::json rows = nlohmann::json::array();
    bool all_ok = true;
    double max_z = 0.0;
    for (std::size_t i = 0; i < config.tau_list.size(); ++i) {
        const double ana = analysis.at("tails")[i].at("probability").get<double>();
        const auto& est = sim_side.at("tails")[i];
        if (est.at("tau").get<int>() != config.tau_list[i])
            throw std::invalid_argument("prior simulation used a different tau_list");
        const double emp = est.at("frequency").get<double>();
        double se = est.at("std_error").is_null() ? 0.0 : est.at("std_error").get<double>();
        const double p_clamped = std::clamp(ana, 0.0, 1.0);
        const double floor =
            std::sqrt(p_clamped * (1.0 - p_clamped) / static_cast<double>(n));
        se = std::max(se, floor);
        const double z = se > 0.0 ? std::abs(emp - ana) / se
                                  : (emp == ana ? 0.0 : std::numeric_limits<double>::infinity());
        max_z = std::max(max_z, z);
        if (!(z <= 3.0)) all_ok = false;
        rows.push_back({{"tau", config.tau_list[i]},
                        {"analytical", ana},
                        {"empirical", emp},
                        {"std_error", se},
                        {"z_score", z}});
    }

    report["tails"] = rows;
    report["mean_queue"] = {
        {"analytical", analysis.at("mean_queue_length")},
        {"empirical", sim_side.at("mean_queue")},
        {"std_error", sim_side.at("mean_queue_std_error")}};
    report["max_z_score"] = max_z;
    report["all_within_3_sigma"] = all_ok;
    return report;
}

nlohmann::json error_record(const std::string& kind, const std::string& message,
                            const nlohmann::json& detail) {
    return nlohmann::json{{"schema_version", kSchemaVersion},
                          {"error", {{"kind", kind}, {"message", message}, {"detail", detail}}}};
}

void write_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::ios_base::failure("cannot open output file: " + out_path);
    out << text;
    if (!out) throw std::ios_base::failure("failed writing output file: " + out_path);
}

}  // namespace gequeue::cli
