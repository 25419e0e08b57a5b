#pragma once

// Shared fixtures for the unit tests: canonical parameter sets, control
// field builders, and the discrete norms used by the frozen oracle values.

#include <cmath>
#include <cstddef>
#include <vector>

#include "goodwill/model.hpp"
#include "goodwill/presets.hpp"

namespace testutil {

// Trapezoid weights on n+1 uniform nodes with step h.
inline std::vector<double> trap_weights(std::size_t n, double h) {
    std::vector<double> w(n + 1, h);
    w.front() = 0.5 * h;
    w.back() = 0.5 * h;
    return w;
}

// Discrete L2 norm of a field over [0,T]x[0,1] with trapezoid weights.
inline double field_l2(const goodwill::Grid& g, const goodwill::Field& x) {
    const auto wt = trap_weights(g.n_time, g.dt);
    const auto wa = trap_weights(g.n_space, g.da);
    double s = 0.0;
    for (std::size_t j = 0; j <= g.n_time; ++j)
        for (std::size_t i = 0; i <= g.n_space; ++i)
            s += wt[j] * wa[i] * x(j, i) * x(j, i);
    return std::sqrt(s);
}

inline goodwill::Field constant_field(const goodwill::Grid& g, double c) {
    return goodwill::Field(g.n_time + 1, g.n_space + 1, c);
}

inline goodwill::BoundarySeries constant_series(const goodwill::Grid& g, double c) {
    return goodwill::BoundarySeries(g.n_time + 1, c);
}

// The smooth admissible test controls used by the solver-agreement checks:
// u(t,a) = 0.2 (1+a)(1+t), u0(t) = 0.1.
inline goodwill::Field smooth_test_u(const goodwill::Grid& g) {
    goodwill::Field u(g.n_time + 1, g.n_space + 1);
    for (std::size_t j = 0; j <= g.n_time; ++j)
        for (std::size_t i = 0; i <= g.n_space; ++i)
            u(j, i) = 0.2 * (1.0 + static_cast<double>(i) * g.da) *
                      (1.0 + static_cast<double>(j) * g.dt);
    return u;
}

// Simple synthetic model: constant delta and recommendation rates, all other
// parameters benign.  Useful for closed-form checks.
inline goodwill::ModelParams synthetic_params(double delta_c, double recomm_c) {
    goodwill::ModelParams p;
    p.delta = [delta_c](double) { return delta_c; };
    p.recommendation = [recomm_c](double) { return recomm_c; };
    p.rho = 1.0;
    p.gamma = 1.0;
    p.discount_rate = 0.028;
    p.beta = 0.16;
    p.revenue_coeff = 0.34;
    p.fixed_cost = 0.0;
    p.horizon = 1.0;
    p.initial_goodwill = [](double) { return 1.5; };
    return p;
}

} // namespace testutil
