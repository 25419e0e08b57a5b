#include "goodwill/characteristics.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "goodwill/errors.hpp"
#include "goodwill/volterra.hpp"

namespace goodwill {

namespace {

void check_admissible(const ModelParams& p, const Field& u, const BoundarySeries& u0) {
    const double cap = p.max_intensity * (1.0 + 1e-12);
    for (double v : u.v)
        if (v < 0.0 || v > cap)
            throw InadmissibleControl("distributed control leaves [0, I]");
    for (double v : u0)
        if (v < 0.0 || v > cap)
            throw InadmissibleControl("boundary control leaves [0, I]");
}

// F_phi(theta_j) = int_{theta_j}^1 phi(s - theta_j) R(s) D(s) / D(s - theta_j) ds
// by trapezoid on the shared nodes.
std::vector<double> forcing_profile(const std::vector<double>& phi,
                                    const std::vector<double>& RD,
                                    const std::vector<double>& D, double h) {
    const std::size_t n = phi.size() - 1;
    std::vector<double> F(n + 1, 0.0);
    std::vector<double> vals;
    for (std::size_t j = 0; j <= n; ++j) {
        vals.resize(n - j + 1);
        for (std::size_t m = 0; m <= n - j; ++m) vals[m] = phi[m] * RD[j + m] / D[m];
        F[j] = trapezoid(vals, h);
    }
    return F;
}

} // namespace

CharSolution solve_state_characteristics(const ModelParams& p, const Grid& grid,
                                         const Field& u, const BoundarySeries& u0) {
    if (std::abs(grid.dt - grid.da) > 1e-12)
        throw ConfigError("characteristic solver needs diagonal alignment dt == da "
                          "(choose n_time = n_space * horizon)");
    check_admissible(p, u, u0);

    const std::size_t N = grid.n_space;
    const std::size_t M = grid.n_time;
    const double h = grid.da;

    const auto D = discount_nodes(p, N);
    std::vector<double> Rv(N + 1), RD(N + 1), G0(N + 1);
    for (std::size_t i = 0; i <= N; ++i) {
        const double a = h * static_cast<double>(i);
        Rv[i] = p.recommendation(a);
        RD[i] = Rv[i] * D[i];
        G0[i] = p.initial_goodwill(a);
    }
    const double int_rd = trapezoid(RD, h);
    if (int_rd >= 1.0)
        throw StabilityViolation("int R D = " + std::to_string(int_rd) + " >= 1");
    const double mu = 1.0 / (1.0 - int_rd);

    // Controls enter only through u^rho; w aggregates the boundary inflow.
    Field up(M + 1, N + 1);
    std::vector<double> w(M + 1);
    {
        std::vector<double> row(N + 1);
        for (std::size_t j = 0; j <= M; ++j) {
            for (std::size_t i = 0; i <= N; ++i) {
                up(j, i) = std::pow(u(j, i), p.rho);
                row[i] = up(j, i);
            }
            w[j] = trapezoid(row, h) + std::pow(u0[j], p.rho);
        }
    }

    // Renewal densities: one solve for the initial profile, one for the
    // density derivative, and one per time row for the control profiles.
    const auto BG0 = volterra_grid(forcing_profile(G0, RD, D, h), RD, h);
    std::vector<double> neg_k(N + 1);
    for (std::size_t i = 0; i <= N; ++i) neg_k[i] = -RD[i] / mu;
    const auto Bd = volterra_grid(neg_k, RD, h);
    std::vector<std::vector<double>> Btab(M + 1);
    {
        std::vector<double> row(N + 1);
        for (std::size_t m = 0; m <= M; ++m) {
            for (std::size_t i = 0; i <= N; ++i) row[i] = up(m, i);
            Btab[m] = volterra_grid(forcing_profile(row, RD, D, h), RD, h);
        }
    }

    CharSolution sol;
    sol.G = Field(M + 1, N + 1);
    for (std::size_t i = 0; i <= N; ++i) sol.G(0, i) = G0[i];
    // The corner takes the boundary-limit renewal value: with incompatible
    // data the mild solution jumps across t = a, and the a = 0 trace belongs
    // to the boundary side.
    std::vector<double> rg0(N + 1);
    for (std::size_t i = 0; i <= N; ++i) rg0[i] = Rv[i] * G0[i];
    sol.G(0, 0) = trapezoid(rg0, h) + w[0];

    std::vector<double> vals;
    for (std::size_t j = 1; j <= M; ++j) {
        for (std::size_t i = 0; i <= N; ++i) {
            if (i >= j) {
                // Initial-data branch along the characteristic through (0, i-j).
                const std::size_t k = i - j;
                vals.resize(j + 1);
                for (std::size_t s = 0; s <= j; ++s)
                    vals[s] = up(s, k + s) * D[i] / D[k + s];
                sol.G(j, i) = D[i] / D[k] * G0[k] + trapezoid(vals, h);

                if (i == j) {
                    // Diagnostic: value the boundary branch would assign here.
                    vals.resize(i + 1);
                    for (std::size_t r = 0; r <= i; ++r) vals[r] = up(r, r) / D[r];
                    const double bnd = D[i] * (BG0[0] + trapezoid(vals, h) + w[0]);
                    sol.max_diagonal_jump =
                        std::max(sol.max_diagonal_jump, std::abs(sol.G(j, i) - bnd));
                }
            } else {
                // Boundary branch: tau = t - a enters through the renewal
                // densities and the lifted aggregate control.
                const std::size_t q = j - i;

                double along = 0.0;
                if (i >= 1) {
                    vals.resize(i + 1);
                    for (std::size_t r = 0; r <= i; ++r) vals[r] = up(q + r, r) / D[r];
                    along = trapezoid(vals, h);
                }

                double densities = 0.0;
                if (q >= 1) {
                    vals.resize(q + 1);
                    for (std::size_t r = 0; r <= q; ++r) vals[r] = Btab[q - r][r];
                    densities = trapezoid(vals, h);
                }

                double lift_conv = 0.0;
                if (q >= 1) {
                    vals.resize(q + 1);
                    for (std::size_t s = 0; s <= q; ++s) vals[s] = Bd[q - s] * w[s];
                    lift_conv = trapezoid(vals, h);
                }

                sol.G(j, i) = D[i] * (BG0[q] + along + densities + w[q] - mu * lift_conv);
            }
        }
    }
    return sol;
}

} // namespace goodwill
