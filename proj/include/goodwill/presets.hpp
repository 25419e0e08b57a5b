#pragma once

#include <string>
#include <vector>

#include "goodwill/model.hpp"

namespace goodwill {

// Shared low-quality-goods study functions:
//   R(a)     = 3/5 - (3/21) sqrt(a)        (decreasing recommendation rate)
//   delta(a) = 1 - (0.5/(1-e^{-1})) e^{-a} (increasing depreciation rate)
double paper_recommendation(double a);
double paper_delta(double a);

// Built-in study presets: (rho, eps_g) in {0.5, 1} x {0.1, 1} with the shared
// parameters r=0.028, T=1, beta=0.16, K=0.34, G0 = 1.5, c_f=0, I unbounded.
// Names: lq_rho05_eps01, lq_rho05_eps1, lq_rho1_eps01, lq_rho1_eps1.
std::vector<std::string> preset_names();
bool is_preset(const std::string& name);
ModelParams preset_params(const std::string& name); // throws ConfigError

// Human-readable table of all presets and their shared parameters.
std::string list_presets();

} // namespace goodwill
