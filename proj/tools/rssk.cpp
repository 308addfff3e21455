#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rssk/config.hpp"
#include "rssk/presets.hpp"
#include "rssk/runner.hpp"
#include "rssk/validate.hpp"
#include "rssk/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitUsage = 2;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"RIS-aided space shift keying: analytic ABEP curves and Monte Carlo BER sweeps"};
    app.set_version_flag("--version", rssk::kToolVersion);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::optional<long long> trials;
    std::optional<double> snr_start, snr_stop;
    double snr_step = 2.0;
    int workers = 0;

    app.add_option("--config", config_path, "JSON scenario config (a run manifest also works)");
    app.add_option("--seed", seed, "base seed for all random streams");
    app.add_option("--trials", trials, "Monte Carlo trials per SNR point");
    app.add_option("--snr-start", snr_start, "first SNR point, dB");
    app.add_option("--snr-stop", snr_stop, "last SNR point, dB");
    app.add_option("--snr-step", snr_step, "SNR grid step, dB (default 2)");
    app.add_option("--workers", workers, "worker threads, 0 = all cores (output is identical for any count)");
    app.add_option("--out", out_dir, "output directory (default ./out)");

    auto* cmd_analyze = app.add_subcommand("analyze", "evaluate analytic ABEP curves to CSV");
    std::vector<std::string> curves = {rssk::curve_kind::closed_form};
    cmd_analyze
        ->add_option("--curves", curves,
                     "curve kinds: closed_form, closed_form_substituted, asymptotic, "
                     "asymptotic_alt, quadrature_oracle")
        ->delimiter(',');
    auto* cmd_simulate = app.add_subcommand("simulate", "run a Monte Carlo BER sweep to CSV");
    auto* cmd_figure = app.add_subcommand("figure", "run a bundled figure preset");
    int figure_id = 0;
    cmd_figure->add_option("--id", figure_id, "figure preset id: 2, 3, 4 or 5")->required();
    auto* cmd_validate =
        app.add_subcommand("validate", "run the cross-oracle consistency suite (exit 1 on failure)");
    for (auto* sub : {cmd_analyze, cmd_simulate, cmd_figure, cmd_validate}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    auto build_config = [&]() {
        rssk::SystemConfig cfg;
        if (!config_path.empty()) cfg = rssk::load_config_file(config_path);
        if (seed) cfg.seed = *seed;
        if (trials) cfg.trials = *trials;
        if (snr_start.has_value() != snr_stop.has_value())
            throw rssk::ConfigError("--snr-start and --snr-stop must be given together");
        if (snr_start) cfg.snr_db_list = rssk::snr_grid(*snr_start, *snr_stop, snr_step);
        cfg.validate();
        return cfg;
    };

    try {
        if (cmd_simulate->parsed()) {
            const auto files = rssk::run_simulate(build_config(), out_dir, workers);
            for (const auto& f : files) std::cout << "wrote " << f << '\n';
        } else if (cmd_analyze->parsed()) {
            const auto files = rssk::run_analyze(build_config(), curves, out_dir);
            for (const auto& f : files) std::cout << "wrote " << f << '\n';
        } else if (cmd_figure->parsed()) {
            const auto preset = rssk::figure_preset(figure_id, seed, trials);
            const auto data = rssk::run_figure(preset, out_dir, workers);
            for (const auto& f : data.written_files) std::cout << "wrote " << f << '\n';
        } else if (cmd_validate->parsed()) {
            const rssk::ValidationReport report = rssk::run_validation(workers);
            for (const auto& c : report.checks)
                std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name
                          << (c.gated ? "" : " (measurement)") << ": " << c.details << '\n';
            std::filesystem::create_directories(out_dir);
            const auto path = std::filesystem::path(out_dir) / "validate_report.json";
            std::ofstream out(path, std::ios::binary);
            out << report.to_json().dump(2) << '\n';
            std::cout << "wrote " << path.string() << '\n';
            if (!report.all_pass()) {
                std::cerr << "validation failed\n";
                return kExitValidationFailure;
            }
        }
    } catch (const rssk::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidationFailure;
    }
    return kExitOk;
}
