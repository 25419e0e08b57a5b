#pragma once

#include "goodwill/model.hpp"

namespace goodwill {

// Forward state solve along characteristic lines.  Serves as the independent
// oracle for the method-of-lines solver.
struct CharSolution {
    Field G;
    // Largest |initial-branch - boundary-branch| gap observed on the t = a
    // diagonal.  The mild solution is discontinuous there whenever the data
    // are incompatible (G0(0) != int R G0 + w(0)); recorded as a diagnostic,
    // continuity is not asserted.
    double max_diagonal_jump = 0.0;
};

// Assembles G on the grid from the explicit representation:
//   a >= t: G(t,a) = D(a)/D(a-t) G0(a-t)
//                    + int_0^t u^rho(s, a-t+s) D(a)/D(a-t+s) ds
//   a <  t: G(t,a) = D(a) [ B_G0(tau) + int_0^a u^rho(r+tau, r)/D(r) dr
//                    + int_0^tau B_{u^rho(tau-r,.)}(r) dr + w(tau)
//                    - mu int_0^tau B'_D(tau-s) w(s) ds ],   tau = t-a,
// with all characteristic integrals by trapezoid on the diagonal lattice and
// one Volterra solve per time node for the time-varying renewal densities.
// The corner (0,0) takes the boundary-limit renewal value
// trapz(R G0) + w(0).
//
// Requires exact diagonal alignment dt == da (i.e. M = N*T): throws
// ConfigError otherwise.  Throws InadmissibleControl / StabilityViolation per
// the preconditions.
CharSolution solve_state_characteristics(const ModelParams& p, const Grid& grid,
                                         const Field& u, const BoundarySeries& u0);

} // namespace goodwill
