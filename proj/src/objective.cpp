#include "goodwill/objective.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "goodwill/errors.hpp"

namespace goodwill {

ProfitBreakdown evaluate(const ModelParams& p, const Grid& grid, const Field& G,
                         const Field& u, const BoundarySeries& u0) {
    const std::size_t N = grid.n_space;
    const std::size_t M = grid.n_time;

    std::vector<double> wa(N + 1, grid.da), wt(M + 1, grid.dt);
    wa.front() = wa.back() = 0.5 * grid.da;
    wt.front() = wt.back() = 0.5 * grid.dt;

    ProfitBreakdown out;
    for (std::size_t j = 0; j <= M; ++j) {
        const double t = grid.dt * static_cast<double>(j);
        const double wje = wt[j] * std::exp(-p.discount_rate * t);

        double rev_row = 0.0, ad_row = 0.0;
        for (std::size_t i = 0; i <= N; ++i) {
            double g = G(j, i);
            if (g < 0.0) {
                if (g < -1e-12)
                    throw NegativeState("state is negative at node (" + std::to_string(j) +
                                        ", " + std::to_string(i) + "): " + std::to_string(g));
                g = 0.0; // round-off residue from the forward solve
            }
            rev_row += wa[i] * (p.gamma == 1.0 ? g : std::pow(g, p.gamma));
            ad_row += wa[i] * u(j, i) * u(j, i);
        }
        out.revenue += wje * p.revenue_coeff * rev_row;
        // u0 and the fixed cost are constant in a: unit spatial weight.
        out.ad_cost += wje * 0.5 * p.beta * (ad_row + u0[j] * u0[j]);
        out.fixed += wje * p.fixed_cost;
    }
    out.total = out.revenue - out.ad_cost - out.fixed;
    return out;
}

} // namespace goodwill
