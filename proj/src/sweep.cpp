#include "goodwill/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "goodwill/errors.hpp"
#include "goodwill/objective.hpp"

namespace goodwill {

namespace {

std::vector<double> trap_weights(std::size_t n, double h) {
    std::vector<double> w(n + 1, h);
    w.front() = 0.5 * h;
    w.back() = 0.5 * h;
    return w;
}

// Candidate controls from the maximum-principle law at every grid node.
ControlPair candidates(const ModelParams& p, const Grid& g, const Field& xi) {
    ControlPair c;
    c.u = Field(g.n_time + 1, g.n_space + 1);
    c.u0 = BoundarySeries(g.n_time + 1);
    for (std::size_t j = 0; j <= g.n_time; ++j) {
        const double t = g.dt * static_cast<double>(j);
        c.u0[j] = control_from_costate(p, t, xi(j, 0));
        for (std::size_t i = 0; i <= g.n_space; ++i)
            c.u(j, i) = control_from_costate(p, t, xi(j, 0), xi(j, i));
    }
    return c;
}

// Bilinear (in t) / linear (in a) transfer of controls between uniform grids;
// convex weights keep the box constraint intact.
ControlPair transfer(const ControlPair& src, const Grid& from, const Grid& to) {
    ControlPair dst;
    dst.u = Field(to.n_time + 1, to.n_space + 1);
    dst.u0 = BoundarySeries(to.n_time + 1);
    const auto locate = [](std::size_t k, std::size_t n_to, std::size_t n_from,
                           std::size_t& lo, double& th) {
        const double x = static_cast<double>(k) * static_cast<double>(n_from) /
                         static_cast<double>(n_to);
        lo = std::min(static_cast<std::size_t>(x), n_from - 1);
        th = x - static_cast<double>(lo);
    };
    for (std::size_t j = 0; j <= to.n_time; ++j) {
        std::size_t jl;
        double tj;
        locate(j, to.n_time, from.n_time, jl, tj);
        dst.u0[j] = (1.0 - tj) * src.u0[jl] + tj * src.u0[jl + 1];
        for (std::size_t i = 0; i <= to.n_space; ++i) {
            std::size_t il;
            double ta;
            locate(i, to.n_space, from.n_space, il, ta);
            dst.u(j, i) = (1.0 - tj) * ((1.0 - ta) * src.u(jl, il) + ta * src.u(jl, il + 1)) +
                          tj * ((1.0 - ta) * src.u(jl + 1, il) + ta * src.u(jl + 1, il + 1));
        }
    }
    return dst;
}

} // namespace

double control_from_costate(const ModelParams& p, double t, double xi0,
                            std::optional<double> xia) {
    const double s = xia ? xi0 + *xia : xi0;
    if (s > 0.0) return 0.0;
    const double v = std::pow(-(p.rho / p.beta) * std::exp(p.discount_rate * t) * s,
                              1.0 / (2.0 - p.rho));
    return std::min(v, p.max_intensity);
}

double control_norm(const Grid& grid, const Field& u, const BoundarySeries& u0) {
    const auto wt = trap_weights(grid.n_time, grid.dt);
    const auto wa = trap_weights(grid.n_space, grid.da);
    double s = 0.0;
    for (std::size_t j = 0; j <= grid.n_time; ++j) {
        double row = 0.0;
        for (std::size_t i = 0; i <= grid.n_space; ++i)
            row += wa[i] * u(j, i) * u(j, i);
        s += wt[j] * (row + u0[j] * u0[j]);
    }
    return std::sqrt(s);
}

SweepStep sweep_once(const ModelParams& p, const Grid& grid, const Field& u,
                     const BoundarySeries& u0, double omega) {
    auto st = forward_state(p, grid, u, u0);
    auto adj = backward_adjoint(p, grid, st);
    auto cand = candidates(p, grid, adj.xi);

    SweepStep step;
    step.controls.u = Field(grid.n_time + 1, grid.n_space + 1);
    step.controls.u0 = BoundarySeries(grid.n_time + 1);

    Field du(grid.n_time + 1, grid.n_space + 1);
    BoundarySeries du0(grid.n_time + 1);
    for (std::size_t k = 0; k < u.v.size(); ++k) {
        step.controls.u.v[k] = omega * cand.u.v[k] + (1.0 - omega) * u.v[k];
        du.v[k] = step.controls.u.v[k] - u.v[k];
    }
    for (std::size_t j = 0; j <= grid.n_time; ++j) {
        step.controls.u0[j] = omega * cand.u0[j] + (1.0 - omega) * u0[j];
        du0[j] = step.controls.u0[j] - u0[j];
    }
    step.delta = control_norm(grid, du, du0) / (1.0 + control_norm(grid, u, u0));
    return step;
}

SolveReport solve(const ModelParams& p, const SweepConfig& config,
                  const std::optional<ControlPair>& initial_guess) {
    validate_params(p);
    if (config.refinement_levels.empty())
        throw ConfigError("refinement ladder is empty");
    if (!(config.relaxation > 0.0) || config.relaxation > 1.0)
        throw ConfigError("relaxation must lie in (0, 1]");

    SolveReport rep;
    Field u;
    BoundarySeries u0;

    for (std::size_t lv = 0; lv < config.refinement_levels.size(); ++lv) {
        const Grid& g = config.refinement_levels[lv];
        if (lv == 0) {
            if (initial_guess) {
                if (initial_guess->u.rows != g.n_time + 1 ||
                    initial_guess->u.cols != g.n_space + 1 ||
                    initial_guess->u0.size() != g.n_time + 1)
                    throw ConfigError("initial guess does not match the coarsest level");
                u = initial_guess->u;
                u0 = initial_guess->u0;
            } else {
                u = Field(g.n_time + 1, g.n_space + 1, 0.0);
                u0 = BoundarySeries(g.n_time + 1, 0.0);
            }
        } else {
            const Grid& prev = config.refinement_levels[lv - 1];
            ControlPair moved = transfer({u, u0}, prev, g);
            u = std::move(moved.u);
            u0 = std::move(moved.u0);
        }

        std::size_t iters = 0;
        double delta = 0.0;
        bool level_ok = false;
        for (std::size_t k = 1; k <= config.max_iters; ++k) {
            auto step = sweep_once(p, g, u, u0, config.relaxation);
            u = std::move(step.controls.u);
            u0 = std::move(step.controls.u0);
            delta = step.delta;
            iters = k;
            if (delta < config.tol_control) {
                level_ok = true;
                break;
            }
        }
        rep.iterations_per_level.push_back(iters);
        rep.final_control_change = delta;
        rep.converged = level_ok;
    }

    const Grid& fine = config.refinement_levels.back();
    rep.u_star = u;
    rep.u0_star = u0;
    auto st = forward_state(p, fine, u, u0);
    auto adj = backward_adjoint(p, fine, st);
    rep.G_star = st.G;
    rep.xi = adj.xi;
    rep.J_star = evaluate(p, fine, st.G, u, u0).total;

    Field zu(fine.n_time + 1, fine.n_space + 1, 0.0);
    BoundarySeries zu0(fine.n_time + 1, 0.0);
    auto zero_st = forward_state(p, fine, zu, zu0);
    rep.J_zero = evaluate(p, fine, zero_st.G, zu, zu0).total;

    for (double v : rep.u_star.v) rep.max_u = std::max(rep.max_u, v);
    for (double v : rep.u0_star) rep.max_u0 = std::max(rep.max_u0, v);
    for (double v : rep.G_star.v) rep.max_G = std::max(rep.max_G, v);
    return rep;
}

} // namespace goodwill
