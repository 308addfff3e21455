#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rssk/channel_model.hpp"
#include "rssk/version.hpp"

namespace rssk {

// Invalid scenario or file input; the CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

// Which channel phase the RIS controller aligns to. Only the estimated
// channel is available in practice; the true-channel variant exists to
// quantify what that knowledge gap costs.
enum class PhaseReference { estimated, true_channel };

inline const char* to_string(PhaseReference p) {
    return p == PhaseReference::estimated ? "estimated" : "true";
}

// Full simulation / analysis scenario. Rician factor and SNR are stored in
// linear scale; dB values appear only at the file/CLI boundary.
struct SystemConfig {
    int n_t = 2;
    int L = 144;
    double kappa = 1.0;  // linear
    double sigma_e_sq = 0.1;
    double d_over_lambda = 0.5;
    double phi_los = 0.25 * std::numbers::pi;
    std::vector<double> snr_db_list;
    long long trials = 100000;
    std::uint64_t seed = 1;
    PhaseReference phase_reference = PhaseReference::estimated;

    double zeta() const { return correlation_coefficient(sigma_e_sq); }
    int bits_per_symbol() const { return std::countr_zero(static_cast<unsigned>(n_t)); }

    void validate() const {
        if (n_t < 2 || !std::has_single_bit(static_cast<unsigned>(n_t)))
            throw ConfigError("n_t must be a power of two >= 2");
        if (L < 1) throw ConfigError("L must be >= 1");
        if (!std::isfinite(kappa) || kappa < 0.0) throw ConfigError("kappa must be finite and >= 0");
        if (!std::isfinite(sigma_e_sq) || sigma_e_sq < 0.0)
            throw ConfigError("sigma_e_sq must be finite and >= 0");
        if (!(d_over_lambda > 0.0)) throw ConfigError("d_over_lambda must be > 0");
        if (!std::isfinite(phi_los) || std::abs(phi_los) > 0.5 * std::numbers::pi + 1e-12)
            throw ConfigError("phi_los must lie in [-pi/2, pi/2]");
        if (snr_db_list.empty()) throw ConfigError("snr_db_list must not be empty");
        for (double s : snr_db_list)
            if (!std::isfinite(s)) throw ConfigError("snr_db_list entries must be finite");
        if (trials < 1) throw ConfigError("trials must be >= 1");
    }
};

inline std::vector<double> snr_grid(double start_db, double stop_db, double step_db) {
    if (!(step_db > 0.0)) throw ConfigError("snr step must be > 0");
    if (stop_db < start_db) throw ConfigError("snr stop must be >= start");
    std::vector<double> grid;
    for (double s = start_db; s <= stop_db + 1e-9; s += step_db) grid.push_back(s);
    return grid;
}

inline nlohmann::json config_to_json(const SystemConfig& c) {
    nlohmann::json j;
    j["n_t"] = c.n_t;
    j["L"] = c.L;
    j["kappa"] = c.kappa;
    if (c.kappa > 0.0) j["kappa_db"] = linear_to_db(c.kappa);
    j["sigma_e_sq"] = c.sigma_e_sq;
    j["zeta"] = c.zeta();
    j["d_over_lambda"] = c.d_over_lambda;
    j["phi_los_rad"] = c.phi_los;
    j["snr_db_list"] = c.snr_db_list;
    j["trials"] = c.trials;
    j["seed"] = c.seed;
    j["phase_reference"] = to_string(c.phase_reference);
    return j;
}

inline SystemConfig config_from_json(const nlohmann::json& j) {
    SystemConfig c;
    try {
        if (j.contains("n_t")) c.n_t = j.at("n_t").get<int>();
        if (j.contains("L")) c.L = j.at("L").get<int>();
        if (j.contains("kappa")) c.kappa = j.at("kappa").get<double>();
        if (j.contains("kappa_db")) c.kappa = db_to_linear(j.at("kappa_db").get<double>());
        if (j.contains("sigma_e_sq")) c.sigma_e_sq = j.at("sigma_e_sq").get<double>();
        if (j.contains("d_over_lambda")) c.d_over_lambda = j.at("d_over_lambda").get<double>();
        if (j.contains("phi_los_rad")) c.phi_los = j.at("phi_los_rad").get<double>();
        if (j.contains("snr_db_list")) c.snr_db_list = j.at("snr_db_list").get<std::vector<double>>();
        if (j.contains("snr_db")) {
            const auto& s = j.at("snr_db");
            c.snr_db_list = snr_grid(s.at("start").get<double>(), s.at("stop").get<double>(),
                                     s.at("step").get<double>());
        }
        if (j.contains("trials")) c.trials = j.at("trials").get<long long>();
        if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("phase_reference")) {
            const std::string p = j.at("phase_reference").get<std::string>();
            if (p == "estimated")
                c.phase_reference = PhaseReference::estimated;
            else if (p == "true")
                c.phase_reference = PhaseReference::true_channel;
            else
                throw ConfigError("phase_reference must be \"estimated\" or \"true\"");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    return c;
}

// Loads either a bare config object or a run manifest (which embeds one
// under "config"), so any emitted manifest can reproduce its run.
inline SystemConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("cannot parse config file " + path + ": " + e.what());
    }
    if (j.contains("config")) return config_from_json(j.at("config"));
    return config_from_json(j);
}

// Everything needed to regenerate a run's numbers exactly.
struct RunManifest {
    std::string tool_version = kToolVersion;
    SystemConfig config;
    std::vector<std::string> curve_kinds;
    std::string timestamp;  // ISO-8601, informational only
    std::uint64_t seed = 0;

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["tool_version"] = tool_version;
        j["config"] = config_to_json(config);
        j["curve_kinds"] = curve_kinds;
        j["timestamp"] = timestamp;
        j["seed"] = seed;
        return j;
    }
};

}  // namespace rssk
