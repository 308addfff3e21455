#pragma once

#include <algorithm>
#include <filesystem>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "rssk/analysis.hpp"
#include "rssk/config.hpp"
#include "rssk/io.hpp"
#include "rssk/montecarlo.hpp"
#include "rssk/presets.hpp"

namespace rssk {

// Analytic ABEP value for one curve kind at one SNR. For n_t = 2 the union
// bound equals the UPEP itself; larger n_t scales by the bit-distance sum.
inline double analytic_value(const SystemConfig& cfg, const std::string& kind, double snr_db) {
    const CompositeStats stats = composite_stats(cfg.L, cfg.kappa);
    const EffectiveChannelParams params{db_to_linear(snr_db), cfg.zeta(), cfg.sigma_e_sq, cfg.L};
    double upep = 0.0;
    if (kind == curve_kind::closed_form)
        upep = upep_closed_form(params, stats, ClosedForm::exact_zeta);
    else if (kind == curve_kind::closed_form_substituted)
        upep = upep_closed_form(params, stats, ClosedForm::substituted);
    else if (kind == curve_kind::asymptotic)
        upep = upep_asymptotic(cfg.L, cfg.kappa, cfg.sigma_e_sq, AsymptoticForm::limit);
    else if (kind == curve_kind::asymptotic_alt)
        upep = upep_asymptotic(cfg.L, cfg.kappa, cfg.sigma_e_sq, AsymptoticForm::alt);
    else if (kind == curve_kind::quadrature_oracle)
        upep = upep_quadrature(params, stats, QKind::exact);
    else
        throw ConfigError("unknown analytic curve kind: " + kind);
    return abep_union_bound(upep, cfg.n_t);
}

inline std::vector<double> analytic_curve(const SystemConfig& cfg, const std::string& kind) {
    std::vector<double> values;
    values.reserve(cfg.snr_db_list.size());
    for (double snr : cfg.snr_db_list) values.push_back(analytic_value(cfg, kind, snr));
    return values;
}

// One emitted CSV line of the combined schema.
struct CurveRow {
    double snr_db = 0.0;
    double value = 0.0;
    std::string kind;
    std::string scenario;
    const SystemConfig* cfg = nullptr;
    const BerPoint* point = nullptr;  // simulated rows only
};

inline std::vector<std::string> csv_header_combined() {
    return {"snr_db", "value",       "curve_kind", "scenario",   "L",   "kappa_db",
            "sigma_e_sq", "n_t",     "trials",     "bit_errors", "ci95"};
}

inline std::vector<std::string> csv_row_combined(const CurveRow& r) {
    const SystemConfig& c = *r.cfg;
    const double kappa_db = c.kappa > 0.0 ? linear_to_db(c.kappa)
                                          : -std::numeric_limits<double>::infinity();
    std::vector<std::string> cells = {format_sig(r.snr_db),   format_sig(r.value), r.kind,
                                      r.scenario,             std::to_string(c.L),
                                      format_sig(kappa_db),   format_sig(c.sigma_e_sq),
                                      std::to_string(c.n_t)};
    if (r.point) {
        cells.push_back(std::to_string(r.point->trials));
        cells.push_back(std::to_string(r.point->bit_errors));
        cells.push_back(format_sig(r.point->ci95_half_width));
    } else {
        cells.insert(cells.end(), {"", "", ""});
    }
    return cells;
}

struct FigureData {
    FigurePreset preset;
    // per scenario: simulated sweep (when requested) and analytic curves
    std::vector<SweepResult> sims;
    std::vector<std::map<std::string, std::vector<double>>> analytic;
    std::vector<std::string> written_files;
};

// Runs every scenario of a figure preset and writes the combined CSV plus a
// manifest. Simulation output is independent of the worker count.
inline FigureData run_figure(const FigurePreset& preset, const std::string& out_dir,
                             int workers = 0) {
    std::filesystem::create_directories(out_dir);
    FigureData data;
    data.preset = preset;

    const bool wants_sim = std::find(preset.curve_kinds.begin(), preset.curve_kinds.end(),
                                     std::string(curve_kind::simulated)) != preset.curve_kinds.end();
    for (const auto& scen : preset.scenarios) {
        scen.config.validate();
        if (wants_sim)
            data.sims.push_back(sweep(scen.config, workers));
        std::map<std::string, std::vector<double>> curves;
        for (const auto& kind : preset.curve_kinds) {
            if (kind == curve_kind::simulated) continue;
            if (kind == curve_kind::asymptotic || kind == curve_kind::asymptotic_alt) {
                if (scen.config.sigma_e_sq <= 0.0) continue;  // no floor under perfect CSI
            }
            SystemConfig sorted_cfg = scen.config;
            std::sort(sorted_cfg.snr_db_list.begin(), sorted_cfg.snr_db_list.end());
            curves[kind] = analytic_curve(sorted_cfg, kind);
        }
        data.analytic.push_back(std::move(curves));
    }

    const std::string csv_path =
        (std::filesystem::path(out_dir) / ("figure" + std::to_string(preset.id) + ".csv")).string();
    CsvWriter csv(csv_path);
    csv.row(csv_header_combined());
    for (std::size_t i = 0; i < preset.scenarios.size(); ++i) {
        const auto& scen = preset.scenarios[i];
        SystemConfig sorted_cfg = scen.config;
        std::sort(sorted_cfg.snr_db_list.begin(), sorted_cfg.snr_db_list.end());
        if (wants_sim) {
            for (const auto& pt : data.sims[i].points) {
                CurveRow r{pt.snr_db, pt.ber, curve_kind::simulated, scen.label, &scen.config, &pt};
                csv.row(csv_row_combined(r));
            }
        }
        for (const auto& [kind, values] : data.analytic[i]) {
            for (std::size_t k = 0; k < values.size(); ++k) {
                CurveRow r{sorted_cfg.snr_db_list[k], values[k], kind, scen.label, &scen.config,
                           nullptr};
                csv.row(csv_row_combined(r));
            }
        }
    }
    data.written_files.push_back(csv_path);

    nlohmann::json j;
    j["tool_version"] = kToolVersion;
    j["figure_id"] = preset.id;
    j["figure_name"] = preset.name;
    j["curve_kinds"] = preset.curve_kinds;
    j["timestamp"] = iso8601_utc_now();
    nlohmann::json scenarios = nlohmann::json::array();
    for (const auto& scen : preset.scenarios) {
        nlohmann::json s;
        s["label"] = scen.label;
        s["config"] = config_to_json(scen.config);
        scenarios.push_back(s);
    }
    j["scenarios"] = scenarios;
    const std::string manifest_path =
        (std::filesystem::path(out_dir) / ("figure" + std::to_string(preset.id) + "_manifest.json"))
            .string();
    std::ofstream mf(manifest_path, std::ios::binary);
    mf << j.dump(2) << '\n';
    data.written_files.push_back(manifest_path);
    return data;
}

// `simulate`: one sweep, CSV schema snr_db, ber, trials, bit_errors, ci95.
inline std::vector<std::string> run_simulate(const SystemConfig& cfg, const std::string& out_dir,
                                             int workers = 0) {
    cfg.validate();
    std::filesystem::create_directories(out_dir);
    const SweepResult result = sweep(cfg, workers);

    const std::string csv_path = (std::filesystem::path(out_dir) / "simulate.csv").string();
    CsvWriter csv(csv_path);
    csv.row({"snr_db", "ber", "trials", "bit_errors", "ci95"});
    for (const auto& pt : result.points)
        csv.row({format_sig(pt.snr_db), format_sig(pt.ber), std::to_string(pt.trials),
                 std::to_string(pt.bit_errors), format_sig(pt.ci95_half_width)});

    RunManifest manifest;
    manifest.config = cfg;
    manifest.curve_kinds = {curve_kind::simulated};
    manifest.timestamp = iso8601_utc_now();
    manifest.seed = cfg.seed;
    const std::string manifest_path =
        (std::filesystem::path(out_dir) / "simulate_manifest.json").string();
    std::ofstream mf(manifest_path, std::ios::binary);
    mf << manifest.to_json().dump(2) << '\n';
    return {csv_path, manifest_path};
}

// `analyze`: one CSV per analytic curve kind plus a summary of the gap
// between the two closed-form variants.
inline std::vector<std::string> run_analyze(const SystemConfig& cfg,
                                            const std::vector<std::string>& kinds,
                                            const std::string& out_dir) {
    cfg.validate();
    std::filesystem::create_directories(out_dir);
    SystemConfig sorted_cfg = cfg;
    std::sort(sorted_cfg.snr_db_list.begin(), sorted_cfg.snr_db_list.end());
    std::vector<std::string> written;

    for (const auto& kind : kinds) {
        if (kind == curve_kind::simulated)
            throw ConfigError("analyze emits analytic curves; use `simulate` for Monte Carlo");
        const std::vector<double> values = analytic_curve(sorted_cfg, kind);
        const std::string path =
            (std::filesystem::path(out_dir) / ("analyze_" + kind + ".csv")).string();
        CsvWriter csv(path);
        csv.row({"snr_db", "value", "curve_kind", "L", "kappa_db", "sigma_e_sq", "n_t"});
        const double kappa_db = cfg.kappa > 0.0 ? linear_to_db(cfg.kappa)
                                                : -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < values.size(); ++i)
            csv.row({format_sig(sorted_cfg.snr_db_list[i]), format_sig(values[i]), kind,
                     std::to_string(cfg.L), format_sig(kappa_db), format_sig(cfg.sigma_e_sq),
                     std::to_string(cfg.n_t)});
        written.push_back(path);
    }

    // summary: where the exact-zeta and substituted closed forms part ways
    nlohmann::json summary;
    {
        const std::vector<double> a = analytic_curve(sorted_cfg, curve_kind::closed_form);
        const std::vector<double> b =
            analytic_curve(sorted_cfg, curve_kind::closed_form_substituted);
        double max_gap = 0.0;
        double at_snr = sorted_cfg.snr_db_list.empty() ? 0.0 : sorted_cfg.snr_db_list.front();
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double gap = std::abs(b[i] - a[i]) / a[i];
            if (gap > max_gap) {
                max_gap = gap;
                at_snr = sorted_cfg.snr_db_list[i];
            }
        }
        summary["closed_form_variant_max_rel_gap"] = max_gap;
        summary["closed_form_variant_max_gap_snr_db"] = at_snr;
    }
    RunManifest manifest;
    manifest.config = cfg;
    manifest.curve_kinds = kinds;
    manifest.timestamp = iso8601_utc_now();
    manifest.seed = cfg.seed;
    nlohmann::json j = manifest.to_json();
    j["summary"] = summary;
    const std::string manifest_path =
        (std::filesystem::path(out_dir) / "analyze_manifest.json").string();
    std::ofstream mf(manifest_path, std::ios::binary);
    mf << j.dump(2) << '\n';
    written.push_back(manifest_path);
    return written;
}

}  // namespace rssk
