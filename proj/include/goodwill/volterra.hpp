#pragma once

#include <functional>
#include <vector>

#include "goodwill/model.hpp"

namespace goodwill {

// Second-kind Volterra renewal problem
//   B(t) = F(t) + int_0^t K(t-s) B(s) ds,  t in [0, t_max],
// with K(t) = R(t) D(t) on [0,1] and 0 beyond (the renewal kernel; unrelated
// to the revenue coefficient K).
struct VolterraProblem {
    std::function<double(double)> kernel;
    std::function<double(double)> forcing;
    double t_max = 1.0;
};

// Nodal samples of B (and optionally of B'_D) on a uniform time grid.
struct BoundaryDensity {
    std::vector<double> b;
    std::vector<double> db; // empty unless produced by derivative_bd
    double dt = 0.0;
};

// Trapezoid fixed-point scheme: the implicit diagonal term is solved
// algebraically at each step,
//   B_j (1 - (dt/2) K(0)) = F_j + dt * sum'_{k<j} K(t_j - t_k) B_k,
// where sum' halves the k=0 weight.  Throws SingularStep when
// 1 - (dt/2) K(0) <= 0.  The returned samples satisfy the integral equation,
// re-evaluated with the same quadrature, to 1e-6 * (1 + ||B||_inf).
BoundaryDensity solve_volterra(const VolterraProblem& problem, std::size_t steps);

// B'_D: the derivative of the renewal density for phi = D, solving
//   B'_D(t) = -(1/mu) R(t) D(t) + int_0^t R(s) D(s) B'_D(t-s) ds   (t < 1)
// with the forcing dropped for t >= 1.  Solved on [0, params.horizon] by the
// same scheme; satisfies ||B'_D||_inf <= mu ||R||_inf.
BoundaryDensity derivative_bd(const ModelParams& p, std::size_t steps);

// Grid-level core shared with the characteristic solver: kernel and forcing
// given as nodal samples with uniform step h.  No residual re-check.
std::vector<double> volterra_grid(const std::vector<double>& forcing,
                                  const std::vector<double>& kernel, double h);

} // namespace goodwill
