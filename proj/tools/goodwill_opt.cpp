// goodwill-opt: advertising-policy solver for the age-structured goodwill model.
//
//   goodwill-opt run scenario.ini [more.ini ...] [overrides]
//   goodwill-opt run --preset lq_rho1_eps1 --out results
//   goodwill-opt list-presets
//
// Exit codes: 0 success, 1 solver failure, 2 configuration error,
// 3 stability violation, 4 iteration budget exhausted.

#include <cstdio>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "goodwill/errors.hpp"
#include "goodwill/presets.hpp"
#include "goodwill/scenario.hpp"

namespace {

std::pair<std::size_t, std::size_t> parse_grid_spec(const std::string& spec) {
    const auto comma = spec.find(',');
    if (comma == std::string::npos)
        throw goodwill::ConfigError("--grid expects N,M (e.g. 50,50), got '" + spec + "'");
    try {
        std::size_t used = 0;
        const long n = std::stol(spec.substr(0, comma), &used);
        if (used != comma) throw std::invalid_argument(spec);
        const std::string mpart = spec.substr(comma + 1);
        const long m = std::stol(mpart, &used);
        if (used != mpart.size()) throw std::invalid_argument(spec);
        if (n < 2 || m < 2)
            throw goodwill::ConfigError("--grid sizes must be at least 2");
        return {static_cast<std::size_t>(n), static_cast<std::size_t>(m)};
    } catch (const goodwill::ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw goodwill::ConfigError("--grid expects N,M (e.g. 50,50), got '" + spec + "'");
    }
}

int run_command(const std::vector<std::string>& config_paths,
                const goodwill::CliOverrides& overrides, std::size_t threads) {
    std::vector<goodwill::ScenarioConfig> scenarios;
    for (const auto& path : config_paths)
        scenarios.push_back(goodwill::load_config(path));
    if (scenarios.empty()) {
        if (!overrides.preset)
            throw goodwill::ConfigError(
                "nothing to run: pass at least one config file or --preset");
        scenarios.push_back(goodwill::config_from_preset(*overrides.preset));
    }
    for (auto& cfg : scenarios) goodwill::apply_overrides(cfg, overrides);
    return goodwill::run_scenarios(scenarios, threads);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimal advertising for the age-structured goodwill model"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Solve one or more scenarios");
    std::vector<std::string> config_paths;
    run->add_option("configs", config_paths, "Scenario config files (INI)");

    std::string preset, mode, out_dir, grid_spec;
    double tol = 0.0;
    long long max_iters = -1;
    std::size_t threads = 0;
    run->add_option("--preset", preset,
                    "Built-in preset (used alone or to override configs)");
    run->add_option("--mode", mode, "Override run mode: optimize | forward");
    run->add_option("--out", out_dir, "Override output directory");
    run->add_option("--grid", grid_spec,
                    "Override grid as N,M (collapses the refinement ladder)");
    run->add_option("--tol", tol, "Override sweep control tolerance");
    run->add_option("--max-iters", max_iters, "Override sweep iteration budget");
    run->add_option("--threads", threads,
                    "Max concurrent scenarios (default: GOODWILL_THREADS or all cores)");

    auto* list = app.add_subcommand("list-presets", "Print the preset registry");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help and friends
        app.exit(e);
        return 2;
    }

    try {
        if (list->parsed()) {
            std::fputs(goodwill::list_presets().c_str(), stdout);
            return 0;
        }
        goodwill::CliOverrides ov;
        if (run->count("--preset")) {
            if (!goodwill::is_preset(preset))
                throw goodwill::ConfigError("unknown preset '" + preset + "'");
            ov.preset = preset;
        }
        if (run->count("--mode")) ov.mode = mode;
        if (run->count("--out")) ov.out_dir = out_dir;
        if (run->count("--grid")) ov.grid = parse_grid_spec(grid_spec);
        if (run->count("--tol")) ov.tol = tol;
        if (run->count("--max-iters")) {
            if (max_iters < 1)
                throw goodwill::ConfigError("--max-iters must be at least 1");
            ov.max_iters = static_cast<std::size_t>(max_iters);
        }
        return run_command(config_paths, ov, threads);
    } catch (const goodwill::ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 2;
    } catch (const goodwill::StabilityViolation& e) {
        std::fprintf(stderr, "stability violation: %s\n", e.what());
        return 3;
    } catch (const goodwill::NoConvergence& e) {
        std::fprintf(stderr, "no convergence: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
