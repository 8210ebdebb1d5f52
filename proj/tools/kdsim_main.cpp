// kdsim — multilayer knowledge-diffusion simulator CLI.
//
// Loads a run configuration (file or built-in preset), validates it, executes
// the simulation stages and replication seeds, and writes CSV/SVG artifacts.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "kdsim/config.hpp"
#include "kdsim/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"multilayer knowledge-diffusion simulator"};

    std::string config_path;
    std::string preset_name;
    std::uint64_t seed = 0;
    std::size_t seeds = 0;
    std::int64_t steps = 0;
    std::string out_dir;
    bool no_charts = false;
    bool validate_only = false;

    auto* config_opt = app.add_option("--config", config_path, "run configuration file (JSON)")
                           ->check(CLI::ExistingFile);
    auto* preset_opt =
        app.add_option("--preset", preset_name, "built-in scenario: paper-531, paper-532, paper-533");
    app.add_option("--seed", seed, "override the base RNG seed");
    app.add_option("--seeds", seeds, "replication: run N seeds (base seed, base+1, ...)");
    app.add_option("--steps", steps, "override the step horizon");
    app.add_option("--out", out_dir, "override the output directory");
    app.add_flag("--no-charts", no_charts, "skip SVG chart rendering");
    app.add_flag("--validate-only", validate_only, "validate the configuration and exit");
    config_opt->excludes(preset_opt);

    CLI11_PARSE(app, argc, argv);

    try {
        kdsim::RunConfig cfg;
        if (!preset_name.empty())
            cfg = kdsim::preset(preset_name);
        else if (!config_path.empty())
            cfg = kdsim::load_config_file(config_path);
        else {
            std::cerr << "error: one of --config or --preset is required\n";
            return 2;
        }

        if (app.count("--seed"))
            cfg.engine.seed = seed;
        if (app.count("--seeds")) {
            cfg.replication.count = seeds;
            cfg.replication.seeds.clear();
        }
        if (app.count("--steps"))
            cfg.engine.steps = steps;
        if (!out_dir.empty())
            cfg.output.directory = out_dir;
        if (no_charts)
            cfg.output.charts = false;

        const std::vector<std::string> violations = kdsim::validate(cfg);
        if (validate_only) {
            if (violations.empty()) {
                std::cout << "configuration valid (digest " << kdsim::config_digest(cfg) << ")\n";
                return 0;
            }
            for (const std::string& v : violations)
                std::cout << "violation: " << v << '\n';
            return 1;
        }
        if (!violations.empty()) {
            for (const std::string& v : violations)
                std::cerr << "config error: " << v << '\n';
            return 2;
        }

        const auto dirs = kdsim::run_all(cfg);
        for (const auto& dir : dirs)
            std::cout << "run complete: " << dir.string() << '\n';
        return 0;
    } catch (const kdsim::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
}
