#pragma once

#include "goodwill/model.hpp"

namespace goodwill {

// Discounted profit split into its three terms; total = revenue - ad_cost - fixed.
struct ProfitBreakdown {
    double revenue = 0.0; // int int e^{-rt} K G^gamma
    double ad_cost = 0.0; // int int e^{-rt} (beta/2)(u^2 + u0^2)
    double fixed = 0.0;   // int int e^{-rt} c_f
    double total = 0.0;
};

// Double composite-trapezoid quadrature of
//   e^{-rt} (K G^gamma - (beta/2)(u^2 + u0^2) - c_f)
// over [0,T] x [0,1].  u0^2(t) is constant in a and so enters with the full
// weight int_0^1 da = 1.  Throws NegativeState if any G entry is below
// -1e-12; entries in [-1e-12, 0) are treated as 0.
ProfitBreakdown evaluate(const ModelParams& p, const Grid& grid, const Field& G,
                         const Field& u, const BoundarySeries& u0);

} // namespace goodwill
