#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rssk/config.hpp"
#include "rssk/rng.hpp"

namespace rssk {

namespace curve_kind {
inline constexpr const char* simulated = "simulated";
inline constexpr const char* closed_form = "closed_form";
inline constexpr const char* closed_form_substituted = "closed_form_substituted";
inline constexpr const char* asymptotic = "asymptotic";
inline constexpr const char* asymptotic_alt = "asymptotic_alt";
inline constexpr const char* quadrature_oracle = "quadrature_oracle";
}  // namespace curve_kind

struct FigureScenario {
    std::string label;
    SystemConfig config;
};

struct FigurePreset {
    int id = 0;
    std::string name;
    std::vector<FigureScenario> scenarios;
    std::vector<std::string> curve_kinds;
    // SNR at which the figure's ordering claim is checked (figures 4 and 5)
    double ordering_snr_db = std::numeric_limits<double>::quiet_NaN();
};

inline std::string format_label(double v) {
    std::string s = std::to_string(v);
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    for (auto& ch : s)
        if (ch == '.') ch = 'p';
    return s;
}

// Bundled scenario sets behind `figure --id N`. The dB grids are chosen so
// the simulated points cover the waterfall at desk-scale trial counts; the
// analytic curves are evaluated on the same grid.
inline FigurePreset figure_preset(int id, std::optional<std::uint64_t> seed = {},
                                  std::optional<long long> trials = {}) {
    const double kappa_3db = db_to_linear(3.0);
    SystemConfig base;
    base.n_t = 2;
    base.kappa = kappa_3db;
    base.sigma_e_sq = 0.1;

    FigurePreset p;
    p.id = id;
    std::uint64_t base_seed;
    switch (id) {
        case 2:
            p.name = "analytical_vs_simulated";
            p.curve_kinds = {curve_kind::simulated, curve_kind::closed_form,
                             curve_kind::closed_form_substituted};
            base_seed = seed.value_or(7002);
            for (int L : {144, 256}) {
                SystemConfig c = base;
                c.L = L;
                c.snr_db_list = snr_grid(-40.0, -22.0, 2.0);
                c.trials = trials.value_or(200000);
                p.scenarios.push_back({"L" + std::to_string(L), c});
            }
            break;
        case 3:
            p.name = "error_floor";
            p.curve_kinds = {curve_kind::simulated, curve_kind::closed_form,
                             curve_kind::asymptotic, curve_kind::asymptotic_alt};
            base_seed = seed.value_or(7003);
            for (int L : {144, 256}) {
                SystemConfig c = base;
                c.L = L;
                c.snr_db_list = snr_grid(-40.0, 8.0, 4.0);
                c.trials = trials.value_or(100000);
                p.scenarios.push_back({"L" + std::to_string(L), c});
            }
            break;
        case 4:
            p.name = "estimation_error_impact";
            p.curve_kinds = {curve_kind::simulated, curve_kind::closed_form};
            p.ordering_snr_db = -28.0;
            base_seed = seed.value_or(7004);
            for (double se2 : {0.1, 1.0, 2.0, 3.0, 0.0}) {
                SystemConfig c = base;
                c.L = 144;
                c.sigma_e_sq = se2;
                c.snr_db_list = snr_grid(-44.0, -12.0, 4.0);
                c.trials = trials.value_or(100000);
                const std::string label =
                    se2 == 0.0 ? "perfect_csi" : "sigma_e_sq_" + format_label(se2);
                p.scenarios.push_back({label, c});
            }
            break;
        case 5:
            p.name = "rician_factor_impact";
            p.curve_kinds = {curve_kind::simulated, curve_kind::closed_form};
            p.ordering_snr_db = -30.0;
            base_seed = seed.value_or(7005);
            for (double kdb : {0.0, 3.0, 6.0}) {
                SystemConfig c = base;
                c.L = 144;
                c.kappa = db_to_linear(kdb);
                c.snr_db_list = snr_grid(-36.0, -16.0, 2.0);
                c.trials = trials.value_or(200000);
                p.scenarios.push_back({"kappa_" + format_label(kdb) + "dB", c});
            }
            break;
        default:
            throw ConfigError("unknown figure id (expected 2, 3, 4 or 5)");
    }
    for (std::size_t i = 0; i < p.scenarios.size(); ++i)
        p.scenarios[i].config.seed = derive_seed(base_seed, i);
    return p;
}

}  // namespace rssk
