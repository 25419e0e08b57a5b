#pragma once

#include "goodwill/model.hpp"

namespace goodwill {

// Method-of-lines state solution: G(j,i) = G*_i(t_j); boundary(j) repeats the
// algebraic boundary node G*_0(t_j) for convenience.
struct MolState {
    Field G;
    BoundarySeries boundary;
};

// Adjoint samples xi(j,i) = xi_i(t_j), with xi_N == 0 for all j and
// xi_i(T) == 0 for all i.
struct MolAdjoint {
    Field xi;
};

// Integrates the state rows of the semi-discrete system
//   dG_i/dt = -G_i (delta_i + 1/da) + G_{i-1}/da + u_i^rho,   i = 1..N
// with classical RK4; the boundary node is algebraic (index-1 constraint) and
// is recomputed at every RK4 stage from current-stage values:
//   G_0(t) = da (f_1/2 + f_2 + ... + f_{N-1} + f_N/2) + u0^rho(t),
//   f_i = R_i G_i + u_i^rho
// (composite trapezoid over the nodes a_1..a_N).  Controls are interpolated
// linearly in time at half steps.  Initial row G_i(0) = G0(a_i) with the
// boundary node made consistent algebraically at t = 0.
MolState forward_state(const ModelParams& p, const Grid& grid, const Field& u,
                       const BoundarySeries& u0);

// Integrates backward from xi_i(T) = 0 the adjoint rows
//   dxi_i/dt = K e^{-rt} gamma G_i^{gamma-1} - xi_0 R_i
//              + xi_i (delta_i + 1/da) - xi_{i+1}/da,   i = 0..N-1,
// with xi_N == 0; RK4 in reversed time with linear interpolation of G at half
// steps.  The i = 0 row uses the same difference scheme (the continuum adjoint
// has no boundary condition at a = 0).  Throws SingularState if gamma < 1 and
// any G entry is at or below the 1e-12 floor.
MolAdjoint backward_adjoint(const ModelParams& p, const Grid& grid, const MolState& state);

} // namespace goodwill
