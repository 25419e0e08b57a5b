#pragma once

#include <optional>
#include <string>
#include <vector>

#include "goodwill/model.hpp"
#include "goodwill/sweep.hpp"

namespace goodwill {

// A parsed scenario: model + grid + sweep settings + run mode.  Built from a
// flat INI-style config file; unknown sections or keys are rejected.
struct ScenarioConfig {
    std::string name;           // output subdirectory stem (config filename stem)
    ModelParams params;
    std::string preset;         // preset name the model started from, if any
    std::size_t n_space = 50;
    std::size_t n_time = 50;
    std::vector<std::size_t> levels = {10, 25, 50}; // refinement ladder (N values)
    double relaxation = 0.5;
    double tol_control = 1e-6;
    std::size_t max_iters = 500;
    std::string mode = "optimize";   // "optimize" | "forward"
    std::string solver = "mol";      // forward mode engine: "mol" | "characteristics"
    std::string out_dir = ".";
    // forward-mode controls: "constant:<v>" or "smooth_test"
    std::string control_u = "constant:0";
    std::string control_u0 = "constant:0";
};

// Command-line overrides applied on top of every config.
struct CliOverrides {
    std::optional<std::string> preset;
    std::optional<std::string> mode;
    std::optional<std::string> out_dir;
    std::optional<std::pair<std::size_t, std::size_t>> grid; // N, M
    std::optional<double> tol;
    std::optional<std::size_t> max_iters;
};

// Parses a config file.  Throws ConfigError on unknown keys, bad values, or
// violated model invariants.
ScenarioConfig load_config(const std::string& path);

// Scenario synthesized from a preset name alone (no config file).
ScenarioConfig config_from_preset(const std::string& preset_name);

void apply_overrides(ScenarioConfig& cfg, const CliOverrides& ov);

// Executes one scenario and writes summary.csv, g_field.csv, u_field.csv and
// u0_series.csv into its output directory.  Returns the directory used.
// Throws ConfigError / StabilityViolation / NoConvergence (the latter after
// the diagnostic outputs are written).
std::string run_scenario(const ScenarioConfig& cfg);

// Runs scenarios concurrently (at most `threads` at a time; 0 picks a
// default capped by GOODWILL_THREADS).  Returns the first failure's exit code
// (ConfigError 2, StabilityViolation 3, NoConvergence 4, other failures 1) or
// 0 when every scenario succeeded.
int run_scenarios(const std::vector<ScenarioConfig>& cfgs, std::size_t threads = 0);

} // namespace goodwill
