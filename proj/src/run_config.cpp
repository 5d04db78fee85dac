#include "gequeue/run_config.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

namespace gequeue::cli {

DecodeFidelity RunConfig::decode_fidelity() const {
    if (fidelity == "analytical_failure") return DecodeFidelity::analytical_failure;
    if (fidelity == "matrix_sampling") return DecodeFidelity::matrix_sampling;
    throw std::invalid_argument("unknown fidelity '" + fidelity +
                                "' (expected analytical_failure or matrix_sampling)");
}

SimConfig RunConfig::sim_config() const {
    return SimConfig{channel(), code(),  traffic(),        blocks,
                     warmup_blocks, seed, decode_fidelity(), tau_list};
}

namespace {

void require_keys(const nlohmann::json& obj, const std::set<std::string>& allowed,
                  const std::string& where) {
    for (const auto& [key, value] : obj.items())
        if (!allowed.contains(key))
            throw std::invalid_argument("unknown config key '" + where + key + "'");
}

template <typename T>
void read(const nlohmann::json& obj, const char* key, T& out) {
    if (obj.contains(key)) out = obj.at(key).get<T>();
}

}  // namespace

RunConfig config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    require_keys(j, {"schema_version", "channel", "code", "traffic", "solver", "analysis",
                     "sim", "sweep"},
                 "");

    RunConfig c;
    if (j.contains("channel")) {
        const auto& ch = j.at("channel");
        require_keys(ch, {"alpha", "beta", "eps_b", "eps_g"}, "channel.");
        read(ch, "alpha", c.alpha);
        read(ch, "beta", c.beta);
        read(ch, "eps_b", c.eps_b);
        read(ch, "eps_g", c.eps_g);
    }
    if (j.contains("code")) {
        const auto& co = j.at("code");
        require_keys(co, {"blocklength", "info_bits"}, "code.");
        read(co, "blocklength", c.blocklength);
        read(co, "info_bits", c.info_bits);
    }
    if (j.contains("traffic")) {
        const auto& tr = j.at("traffic");
        require_keys(tr, {"gamma", "rho"}, "traffic.");
        read(tr, "gamma", c.gamma);
        read(tr, "rho", c.rho);
    }
    if (j.contains("solver")) {
        const auto& so = j.at("solver");
        require_keys(so, {"tol", "max_iter"}, "solver.");
        read(so, "tol", c.tol);
        read(so, "max_iter", c.max_iter);
    }
    if (j.contains("analysis")) {
        const auto& an = j.at("analysis");
        require_keys(an, {"tau_list", "q_max_report", "slot_seconds"}, "analysis.");
        read(an, "tau_list", c.tau_list);
        read(an, "q_max_report", c.q_max_report);
        read(an, "slot_seconds", c.slot_seconds);
    }
    if (j.contains("sim")) {
        const auto& si = j.at("sim");
        require_keys(si, {"blocks", "warmup_blocks", "seed", "fidelity"}, "sim.");
        read(si, "blocks", c.blocks);
        read(si, "warmup_blocks", c.warmup_blocks);
        read(si, "seed", c.seed);
        read(si, "fidelity", c.fidelity);
    }
    if (j.contains("sweep")) {
        const auto& sw = j.at("sweep");
        require_keys(sw, {"axis", "k_min", "k_max", "arrival_bits_per_block"}, "sweep.");
        read(sw, "axis", c.sweep_axis);
        read(sw, "k_min", c.k_min);
        read(sw, "k_max", c.k_max);
        read(sw, "arrival_bits_per_block", c.arrival_grid);
    }
    return c;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);

    // CSV outputs carry their config in a leading comment line.
    if (in.peek() == '#') {
        std::string line;
        std::getline(in, line);
        const std::string prefix = "# config: ";
        if (line.rfind(prefix, 0) != 0)
            throw std::invalid_argument(path + ": leading comment is not an embedded config");
        return config_from_json(nlohmann::json::parse(line.substr(prefix.size())));
    }

    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
    if (j.is_object() && j.contains("config")) return config_from_json(j.at("config"));
    return config_from_json(j);
}

nlohmann::json config_to_json(const RunConfig& c) {
    return nlohmann::json{
        {"schema_version", kSchemaVersion},
        {"channel",
         {{"alpha", c.alpha}, {"beta", c.beta}, {"eps_b", c.eps_b}, {"eps_g", c.eps_g}}},
        {"code", {{"blocklength", c.blocklength}, {"info_bits", c.info_bits}}},
        {"traffic", {{"gamma", c.gamma}, {"rho", c.rho}}},
        {"solver", {{"tol", c.tol}, {"max_iter", c.max_iter}}},
        {"analysis",
         {{"tau_list", c.tau_list},
          {"q_max_report", c.q_max_report},
          {"slot_seconds", c.slot_seconds}}},
        {"sim",
         {{"blocks", c.blocks},
          {"warmup_blocks", c.warmup_blocks},
          {"seed", c.seed},
          {"fidelity", c.fidelity}}},
        {"sweep",
         {{"axis", c.sweep_axis},
          {"k_min", c.k_min},
          {"k_max", c.k_max},
          {"arrival_bits_per_block", c.arrival_grid}}},
    };
}

}  // namespace gequeue::cli
