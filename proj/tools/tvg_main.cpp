#include <iostream>

#include <CLI11.hpp>

#include "tvg/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"tvg - prox-learning experiments in time-varying games"};
    app.require_subcommand(1);

    std::string config_path, preset, out_dir;
    int seeds_override = 0;

    auto* run = app.add_subcommand("run", "execute an experiment");
    run->add_option("config", config_path, "config file (key = value lines)");
    run->add_option("--preset", preset, "use a shipped preset instead of a file");
    run->add_option("--seeds", seeds_override, "override the number of seeds");
    run->add_option("--out", out_dir, "output directory");

    auto* lp = app.add_subcommand("list-presets", "print the shipped presets");

    std::string validate_path;
    auto* val = app.add_subcommand("validate", "check a config without running");
    val->add_option("config", validate_path, "config file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (lp->parsed()) {
            for (const auto& name : tvg::preset_names()) std::cout << name << "\n";
            return 0;
        }
        if (val->parsed()) {
            const auto cfg = tvg::parse_config_file(validate_path);
            const auto warnings = tvg::validate_config(cfg);
            for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
            std::cout << "config ok: " << cfg.name << "\n";
            return 0;
        }
        // run
        if (config_path.empty() == preset.empty()) {
            std::cerr << "run: provide exactly one of <config> or --preset\n";
            return 2;
        }
        tvg::ExperimentConfig cfg = preset.empty()
                                        ? tvg::parse_config_file(config_path)
                                        : tvg::preset_config(preset);
        if (seeds_override > 0) cfg.seeds = seeds_override;
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        const auto summary = tvg::run_experiment(cfg);
        std::cout << summary.json << "\n";
        std::cout << "summary: " << summary.summary_path << "\n";
        return summary.partial ? 1 : 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
