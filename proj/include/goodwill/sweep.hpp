#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "goodwill/mol.hpp"
#include "goodwill/model.hpp"

namespace goodwill {

// Boundary control series plus distributed control field, box-constrained to [0, I].
struct ControlPair {
    Field u;
    BoundarySeries u0;
};

// Forward-backward sweep settings and the coarse-to-fine refinement ladder.
struct SweepConfig {
    double relaxation = 0.5;     // omega: new = omega*formula + (1-omega)*old
    double tol_control = 1e-6;   // stop when relative L2 control change < tol
    std::size_t max_iters = 500;
    std::vector<Grid> refinement_levels; // coarse -> fine
};

// Converged fields and the derived summary quantities.
struct SolveReport {
    Field G_star;
    Field xi;
    Field u_star;
    BoundarySeries u0_star;
    double J_star = 0.0;
    double J_zero = 0.0;
    std::vector<std::size_t> iterations_per_level;
    double final_control_change = 0.0;
    double max_u = 0.0;
    double max_u0 = 0.0;
    double max_G = 0.0;
    bool converged = false;
};

// Maximum-principle feedback law.  s = xi0 for the boundary control, or
// xi0 + xia for the distributed control at segment a:
//   s > 0                                   -> 0
//   s in [-(beta/rho) e^{-rt} I^{2-rho}, 0] -> (-(rho/beta) e^{rt} s)^{1/(2-rho)}
//   s below the interval                    -> I.
double control_from_costate(const ModelParams& p, double t, double xi0,
                            std::optional<double> xia = std::nullopt);

// One forward-backward sweep: state, adjoint, candidate controls from the
// feedback law, relaxed update.  delta is the relative discrete-L2 change
// ||(u',u0') - (u,u0)|| / (1 + ||(u,u0)||).
struct SweepStep {
    ControlPair controls;
    double delta = 0.0;
};
SweepStep sweep_once(const ModelParams& p, const Grid& grid, const Field& u,
                     const BoundarySeries& u0, double omega);

// Full solve over the refinement ladder: iterate sweeps on the coarsest grid
// from initial_guess (default zero controls), transfer converged controls to
// the next level by bilinear interpolation (bounds-preserving), repeat; on the
// finest level evaluate J_star and J_zero.  Non-convergence is reported in the
// SolveReport (converged = false, best iterate retained), not thrown.
SolveReport solve(const ModelParams& p, const SweepConfig& config,
                  const std::optional<ControlPair>& initial_guess = std::nullopt);

// Discrete L2 norm of a control pair (trapezoid weights in both t and a).
double control_norm(const Grid& grid, const Field& u, const BoundarySeries& u0);

} // namespace goodwill
