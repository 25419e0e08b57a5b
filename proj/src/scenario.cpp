#include "goodwill/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "goodwill/characteristics.hpp"
#include "goodwill/errors.hpp"
#include "goodwill/mol.hpp"
#include "goodwill/objective.hpp"
#include "goodwill/presets.hpp"

namespace goodwill {

namespace {

namespace fs = std::filesystem;

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& value) {
    if (value == "inf") return ModelParams::kUnbounded;
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': cannot parse '" + value + "' as a number");
    }
}

std::size_t parse_size(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(value, &used);
        if (used != value.size() || v < 0) throw std::invalid_argument(value);
        return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': cannot parse '" + value + "' as a count");
    }
}

// Rate and profile values: either the built-in study functions or a constant.
SegmentFunction parse_segment_function(const std::string& key, const std::string& value,
                                       bool allow_paper) {
    if (allow_paper && value == "paper") return nullptr; // resolved by the caller
    const std::string prefix = "constant:";
    if (value.rfind(prefix, 0) == 0) {
        const double c = parse_double(key, value.substr(prefix.size()));
        return [c](double) { return c; };
    }
    throw ConfigError("key '" + key + "': expected 'constant:<value>'" +
                      (allow_paper ? " or 'paper'" : ""));
}

std::vector<std::size_t> parse_levels(const std::string& value) {
    std::vector<std::size_t> levels;
    std::istringstream ss(value);
    std::string tok;
    while (std::getline(ss, tok, ','))
        levels.push_back(parse_size("levels", trim(tok)));
    if (levels.empty()) throw ConfigError("levels must list at least one grid size");
    for (std::size_t k = 1; k < levels.size(); ++k)
        if (levels[k] <= levels[k - 1])
            throw ConfigError("levels must be strictly increasing");
    return levels;
}

using KvMap = std::map<std::string, std::string>;

std::map<std::string, KvMap> read_ini(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::map<std::string, KvMap> sections;
    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(path + ":" + std::to_string(lineno) + ": unterminated section");
            section = trim(line.substr(1, line.size() - 2));
            sections[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
        if (section.empty())
            throw ConfigError(path + ":" + std::to_string(lineno) + ": key outside any section");
        const std::string key = trim(line.substr(0, eq));
        sections[section][key] = trim(line.substr(eq + 1));
    }
    return sections;
}

void apply_model_section(ScenarioConfig& cfg, const KvMap& kv) {
    // The preset seeds the model; explicit keys then override field by field.
    auto it = kv.find("preset");
    if (it != kv.end()) {
        cfg.preset = it->second;
        cfg.params = preset_params(cfg.preset);
    }
    ModelParams& p = cfg.params;
    for (const auto& [key, value] : kv) {
        if (key == "preset") continue;
        if (key == "rho") p.rho = parse_double(key, value);
        else if (key == "gamma") p.gamma = parse_double(key, value);
        else if (key == "discount_rate") p.discount_rate = parse_double(key, value);
        else if (key == "beta") p.beta = parse_double(key, value);
        else if (key == "revenue_coeff") p.revenue_coeff = parse_double(key, value);
        else if (key == "fixed_cost") p.fixed_cost = parse_double(key, value);
        else if (key == "horizon") p.horizon = parse_double(key, value);
        else if (key == "max_intensity") p.max_intensity = parse_double(key, value);
        else if (key == "initial_goodwill") p.initial_goodwill = parse_segment_function(key, value, false);
        else if (key == "recommendation") {
            auto f = parse_segment_function(key, value, true);
            p.recommendation = f ? f : SegmentFunction(paper_recommendation);
        } else if (key == "delta") {
            auto f = parse_segment_function(key, value, true);
            p.delta = f ? f : SegmentFunction(paper_delta);
        } else {
            throw ConfigError("unknown key '" + key + "' in section [model]");
        }
    }
}

void apply_grid_section(ScenarioConfig& cfg, const KvMap& kv) {
    for (const auto& [key, value] : kv) {
        if (key == "n_space") cfg.n_space = parse_size(key, value);
        else if (key == "n_time") cfg.n_time = parse_size(key, value);
        else if (key == "levels") cfg.levels = parse_levels(value);
        else throw ConfigError("unknown key '" + key + "' in section [grid]");
    }
}

void apply_sweep_section(ScenarioConfig& cfg, const KvMap& kv) {
    for (const auto& [key, value] : kv) {
        if (key == "relaxation") cfg.relaxation = parse_double(key, value);
        else if (key == "tol_control") cfg.tol_control = parse_double(key, value);
        else if (key == "max_iters") cfg.max_iters = parse_size(key, value);
        else throw ConfigError("unknown key '" + key + "' in section [sweep]");
    }
}

void apply_run_section(ScenarioConfig& cfg, const KvMap& kv) {
    for (const auto& [key, value] : kv) {
        if (key == "mode") cfg.mode = value;
        else if (key == "solver") cfg.solver = value;
        else if (key == "out_dir") cfg.out_dir = value;
        else if (key == "control_u") cfg.control_u = value;
        else if (key == "control_u0") cfg.control_u0 = value;
        else throw ConfigError("unknown key '" + key + "' in section [run]");
    }
}

void check_enums(const ScenarioConfig& cfg) {
    if (cfg.mode != "optimize" && cfg.mode != "forward")
        throw ConfigError("mode must be 'optimize' or 'forward', got '" + cfg.mode + "'");
    if (cfg.solver != "mol" && cfg.solver != "characteristics")
        throw ConfigError("solver must be 'mol' or 'characteristics', got '" + cfg.solver + "'");
    if (cfg.levels.empty()) throw ConfigError("refinement ladder is empty");
    if (cfg.levels.back() != cfg.n_space)
        throw ConfigError("the last refinement level must equal n_space");
}

// Forward-mode control builders: "constant:<v>" or the smooth admissible
// test profile u(t,a) = 0.2 (1+a)(1+t).
Field build_control_u(const ScenarioConfig& cfg, const Grid& g) {
    Field u(g.n_time + 1, g.n_space + 1);
    if (cfg.control_u == "smooth_test") {
        for (std::size_t j = 0; j <= g.n_time; ++j)
            for (std::size_t i = 0; i <= g.n_space; ++i)
                u(j, i) = 0.2 * (1.0 + static_cast<double>(i) * g.da) *
                          (1.0 + static_cast<double>(j) * g.dt);
        return u;
    }
    const std::string prefix = "constant:";
    if (cfg.control_u.rfind(prefix, 0) == 0) {
        const double c = parse_double("control_u", cfg.control_u.substr(prefix.size()));
        for (double& v : u.v) v = c;
        return u;
    }
    throw ConfigError("control_u must be 'constant:<v>' or 'smooth_test'");
}

BoundarySeries build_control_u0(const ScenarioConfig& cfg, const Grid& g) {
    const std::string prefix = "constant:";
    if (cfg.control_u0.rfind(prefix, 0) == 0) {
        const double c = parse_double("control_u0", cfg.control_u0.substr(prefix.size()));
        return BoundarySeries(g.n_time + 1, c);
    }
    if (cfg.control_u0 == "smooth_test") {
        BoundarySeries u0(g.n_time + 1);
        for (std::size_t j = 0; j <= g.n_time; ++j)
            u0[j] = 0.1 * (1.0 + static_cast<double>(j) * g.dt);
        return u0;
    }
    throw ConfigError("control_u0 must be 'constant:<v>' or 'smooth_test'");
}

// Scale the time resolution with each ladder level, keeping the configured
// aspect ratio (and therefore the CFL margin) of the finest grid.
Grid level_grid(const ScenarioConfig& cfg, std::size_t n) {
    const std::size_t m =
        std::max<std::size_t>(2, (n * cfg.n_time + cfg.n_space - 1) / cfg.n_space);
    return Grid(n, m, cfg.params.horizon);
}

void write_field_csv(const fs::path& path, const Grid& g, const Field& x) {
    std::FILE* f = std::fopen(path.string().c_str(), "w");
    if (!f) throw SolverError("cannot write " + path.string());
    std::fprintf(f, "t,a,value\n");
    for (std::size_t j = 0; j <= g.n_time; ++j)
        for (std::size_t i = 0; i <= g.n_space; ++i)
            std::fprintf(f, "%.12g,%.12g,%.12g\n", g.dt * static_cast<double>(j),
                         g.da * static_cast<double>(i), x(j, i));
    std::fclose(f);
}

void write_series_csv(const fs::path& path, const Grid& g, const BoundarySeries& s) {
    std::FILE* f = std::fopen(path.string().c_str(), "w");
    if (!f) throw SolverError("cannot write " + path.string());
    std::fprintf(f, "t,value\n");
    for (std::size_t j = 0; j <= g.n_time; ++j)
        std::fprintf(f, "%.12g,%.12g\n", g.dt * static_cast<double>(j), s[j]);
    std::fclose(f);
}

struct RunOutputs {
    Field G, u;
    BoundarySeries u0;
    double j = 0.0, j0 = 0.0;
    std::size_t iterations = 0;
    double final_residual = 0.0;
    double max_u = 0.0, max_u0 = 0.0, max_G = 0.0;
};

void write_outputs(const ScenarioConfig& cfg, const Grid& g, const RunOutputs& out,
                   const fs::path& dir) {
    fs::create_directories(dir);
    write_field_csv(dir / "g_field.csv", g, out.G);
    write_field_csv(dir / "u_field.csv", g, out.u);
    write_series_csv(dir / "u0_series.csv", g, out.u0);

    std::FILE* f = std::fopen((dir / "summary.csv").string().c_str(), "w");
    if (!f) throw SolverError("cannot write " + (dir / "summary.csv").string());
    std::fprintf(f, "rho,gamma,J0,J,dJ_over_J0,max_u,max_u0,max_G,iterations,"
                    "final_residual\n");
    const double gain = out.j0 != 0.0 ? (out.j - out.j0) / out.j0 : 0.0;
    std::fprintf(f, "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%zu,%.12g\n",
                 cfg.params.rho, cfg.params.gamma, out.j0, out.j, gain, out.max_u,
                 out.max_u0, out.max_G, out.iterations, out.final_residual);
    std::fclose(f);
}

std::size_t env_thread_cap() {
    if (const char* env = std::getenv("GOODWILL_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return 0;
}

} // namespace

ScenarioConfig load_config(const std::string& path) {
    ScenarioConfig cfg;
    cfg.name = fs::path(path).stem().string();

    const auto sections = read_ini(path);
    for (const auto& [section, kv] : sections) {
        if (section == "model") apply_model_section(cfg, kv);
        else if (section == "grid") apply_grid_section(cfg, kv);
        else if (section == "sweep") apply_sweep_section(cfg, kv);
        else if (section == "run") apply_run_section(cfg, kv);
        else throw ConfigError("unknown section [" + section + "] in " + path);
    }
    // A default ladder deeper than the requested grid collapses to the grid.
    if (sections.count("grid") && !sections.at("grid").count("levels")) {
        std::vector<std::size_t> kept;
        for (std::size_t n : cfg.levels)
            if (n < cfg.n_space) kept.push_back(n);
        kept.push_back(cfg.n_space);
        cfg.levels = kept;
    }
    check_enums(cfg);
    validate_params(cfg.params);
    return cfg;
}

ScenarioConfig config_from_preset(const std::string& preset_name) {
    ScenarioConfig cfg;
    cfg.name = preset_name;
    cfg.preset = preset_name;
    cfg.params = preset_params(preset_name);
    return cfg;
}

void apply_overrides(ScenarioConfig& cfg, const CliOverrides& ov) {
    if (ov.preset) {
        cfg.preset = *ov.preset;
        cfg.params = preset_params(*ov.preset);
    }
    if (ov.mode) cfg.mode = *ov.mode;
    if (ov.out_dir) cfg.out_dir = *ov.out_dir;
    if (ov.grid) {
        cfg.n_space = ov.grid->first;
        cfg.n_time = ov.grid->second;
        cfg.levels = {cfg.n_space}; // explicit grid collapses the ladder
    }
    if (ov.tol) cfg.tol_control = *ov.tol;
    if (ov.max_iters) cfg.max_iters = *ov.max_iters;
    check_enums(cfg);
}

std::string run_scenario(const ScenarioConfig& cfg) {
    validate_params(cfg.params);
    const auto [stable, value] = stability_check(cfg.params, 10000);
    if (!stable)
        throw StabilityViolation("scenario '" + cfg.name + "': int R D = " +
                                 std::to_string(value) + " >= 1");

    const Grid fine(cfg.n_space, cfg.n_time, cfg.params.horizon);
    const fs::path dir = fs::path(cfg.out_dir) / cfg.name;
    RunOutputs out;

    if (cfg.mode == "forward") {
        out.u = build_control_u(cfg, fine);
        out.u0 = build_control_u0(cfg, fine);
        Field zero_u(fine.n_time + 1, fine.n_space + 1, 0.0);
        BoundarySeries zero_u0(fine.n_time + 1, 0.0);
        if (cfg.solver == "characteristics") {
            out.G = solve_state_characteristics(cfg.params, fine, out.u, out.u0).G;
            out.j0 = evaluate(cfg.params, fine,
                              solve_state_characteristics(cfg.params, fine, zero_u, zero_u0).G,
                              zero_u, zero_u0).total;
        } else {
            out.G = forward_state(cfg.params, fine, out.u, out.u0).G;
            out.j0 = evaluate(cfg.params, fine,
                              forward_state(cfg.params, fine, zero_u, zero_u0).G,
                              zero_u, zero_u0).total;
        }
        out.j = evaluate(cfg.params, fine, out.G, out.u, out.u0).total;
    } else {
        SweepConfig sw;
        sw.relaxation = cfg.relaxation;
        sw.tol_control = cfg.tol_control;
        sw.max_iters = cfg.max_iters;
        for (std::size_t n : cfg.levels) sw.refinement_levels.push_back(level_grid(cfg, n));

        auto rep = solve(cfg.params, sw);
        out.G = rep.G_star;
        out.u = rep.u_star;
        out.u0 = rep.u0_star;
        out.j = rep.J_star;
        out.j0 = rep.J_zero;
        for (std::size_t k : rep.iterations_per_level) out.iterations += k;
        out.final_residual = rep.final_control_change;

        if (!rep.converged) {
            for (double v : out.u.v) out.max_u = std::max(out.max_u, v);
            for (double v : out.u0) out.max_u0 = std::max(out.max_u0, v);
            for (double v : out.G.v) out.max_G = std::max(out.max_G, v);
            write_outputs(cfg, fine, out, dir); // keep the diagnostics
            throw NoConvergence("scenario '" + cfg.name + "': control change " +
                                std::to_string(out.final_residual) + " after " +
                                std::to_string(out.iterations) + " sweeps (tol " +
                                std::to_string(cfg.tol_control) + ")");
        }
    }

    for (double v : out.u.v) out.max_u = std::max(out.max_u, v);
    for (double v : out.u0) out.max_u0 = std::max(out.max_u0, v);
    for (double v : out.G.v) out.max_G = std::max(out.max_G, v);
    write_outputs(cfg, fine, out, dir);
    return dir.string();
}

int run_scenarios(const std::vector<ScenarioConfig>& cfgs, std::size_t threads) {
    if (cfgs.empty()) throw ConfigError("no scenarios to run");

    if (threads == 0) {
        threads = env_thread_cap();
        if (threads == 0) {
            threads = std::thread::hardware_concurrency();
            if (threads == 0) threads = 1;
        }
    }
    threads = std::min(threads, cfgs.size());

    std::vector<int> codes(cfgs.size(), 0);
    std::vector<std::string> messages(cfgs.size());
    std::atomic<std::size_t> next{0};
    std::mutex io;

    auto worker = [&]() {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= cfgs.size()) return;
            try {
                const auto dir = run_scenario(cfgs[k]);
                std::lock_guard<std::mutex> lock(io);
                std::printf("[%s] ok -> %s\n", cfgs[k].name.c_str(), dir.c_str());
            } catch (const ConfigError& e) {
                codes[k] = 2; messages[k] = e.what();
            } catch (const StabilityViolation& e) {
                codes[k] = 3; messages[k] = e.what();
            } catch (const NoConvergence& e) {
                codes[k] = 4; messages[k] = e.what();
            } catch (const std::exception& e) {
                codes[k] = 1; messages[k] = e.what();
            }
        }
    };

    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    for (std::size_t k = 0; k < cfgs.size(); ++k) {
        if (codes[k] != 0) {
            std::fprintf(stderr, "[%s] failed: %s\n", cfgs[k].name.c_str(),
                         messages[k].c_str());
            return codes[k];
        }
    }
    return 0;
}

} // namespace goodwill
