#include "goodwill/presets.hpp"

#include <cmath>
#include <sstream>

#include "goodwill/errors.hpp"

namespace goodwill {

double paper_recommendation(double a) {
    return 3.0 / 5.0 - (3.0 / 21.0) * std::sqrt(a);
}

double paper_delta(double a) {
    static const double c = 0.5 / (1.0 - std::exp(-1.0));
    return 1.0 - c * std::exp(-a);
}

std::vector<std::string> preset_names() {
    return {"lq_rho05_eps01", "lq_rho05_eps1", "lq_rho1_eps01", "lq_rho1_eps1"};
}

bool is_preset(const std::string& name) {
    for (const auto& n : preset_names())
        if (n == name) return true;
    return false;
}

ModelParams preset_params(const std::string& name) {
    double rho = 0.0, gamma = 0.0;
    if (name == "lq_rho05_eps01") {
        rho = 0.5; gamma = 0.1;
    } else if (name == "lq_rho05_eps1") {
        rho = 0.5; gamma = 1.0;
    } else if (name == "lq_rho1_eps01") {
        rho = 1.0; gamma = 0.1;
    } else if (name == "lq_rho1_eps1") {
        rho = 1.0; gamma = 1.0;
    } else {
        throw ConfigError("unknown preset '" + name + "'");
    }

    ModelParams p;
    p.delta = paper_delta;
    p.recommendation = paper_recommendation;
    p.rho = rho;
    p.gamma = gamma;
    p.discount_rate = 0.028;
    p.beta = 0.16;
    p.revenue_coeff = 0.34;
    p.fixed_cost = 0.0;
    p.horizon = 1.0;
    p.max_intensity = ModelParams::kUnbounded;
    p.initial_goodwill = [](double) { return 1.5; };
    return p;
}

std::string list_presets() {
    std::ostringstream out;
    out << "Low-quality-goods study presets (shared: r=0.028, T=1, beta=0.16, "
           "K=0.34, G0=1.5, c_f=0, I unbounded;\n"
           "R(a) = 3/5 - (3/21) sqrt(a), delta(a) = 1 - (0.5/(1-e^-1)) e^-a):\n";
    out << "  lq_rho05_eps01   rho=0.5  gamma=0.1\n";
    out << "  lq_rho05_eps1    rho=0.5  gamma=1\n";
    out << "  lq_rho1_eps01    rho=1    gamma=0.1\n";
    out << "  lq_rho1_eps1     rho=1    gamma=1\n";
    return out.str();
}

} // namespace goodwill
