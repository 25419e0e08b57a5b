#include "goodwill/mol.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "goodwill/errors.hpp"

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

double upow(double v, double rho) { return rho == 1.0 ? v : std::pow(v, rho); }

// Composite trapezoid of f_i = R_i G_i + u_i^rho over the interior nodes
// a_1 .. a_N (the algebraic boundary node itself is excluded).
double boundary_row(const std::vector<double>& R, const double* G_interior,
                    const double* u_row, double rho, double da, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        const double f = R[i] * G_interior[i - 1] + upow(u_row[i], rho);
        s += (i == 1 || i == n) ? 0.5 * f : f;
    }
    return da * s;
}

} // namespace

MolState forward_state(const ModelParams& p, const Grid& grid, const Field& u,
                       const BoundarySeries& u0) {
    check_admissible(p, u, u0);
    const std::size_t N = grid.n_space;
    const std::size_t M = grid.n_time;
    const double da = grid.da;
    const double dt = grid.dt;

    std::vector<double> R(N + 1), dl(N + 1);
    for (std::size_t i = 0; i <= N; ++i) {
        const double a = da * static_cast<double>(i);
        R[i] = p.recommendation(a);
        dl[i] = p.delta(a);
    }

    MolState st;
    st.G = Field(M + 1, N + 1);
    st.boundary = BoundarySeries(M + 1);

    // Interior initial data plus the algebraically consistent boundary node.
    std::vector<double> y(N);
    for (std::size_t i = 1; i <= N; ++i) {
        y[i - 1] = p.initial_goodwill(da * static_cast<double>(i));
        st.G(0, i) = y[i - 1];
    }
    st.G(0, 0) = boundary_row(R, y.data(), u.v.data(), p.rho, da, N) + upow(u0[0], p.rho);
    st.boundary[0] = st.G(0, 0);

    // Controls are linearly interpolated in time at the RK4 half steps.
    std::vector<double> u_row(N + 1);
    double u0_val = 0.0;
    auto controls_at = [&](double tau) {
        const double x = tau / dt;
        const std::size_t j = std::min(static_cast<std::size_t>(std::max(x, 0.0)),
                                       M - 1);
        const double th = x - static_cast<double>(j);
        for (std::size_t i = 0; i <= N; ++i)
            u_row[i] = (1.0 - th) * u(j, i) + th * u(j + 1, i);
        u0_val = (1.0 - th) * u0[j] + th * u0[j + 1];
    };

    auto rhs = [&](double tau, const std::vector<double>& yy, std::vector<double>& dy) {
        controls_at(tau);
        const double g0 =
            boundary_row(R, yy.data(), u_row.data(), p.rho, da, N) + upow(u0_val, p.rho);
        for (std::size_t i = 0; i < N; ++i) {
            const double inflow = (i == 0 ? g0 : yy[i - 1]) / da;
            dy[i] = -yy[i] * (dl[i + 1] + 1.0 / da) + inflow + upow(u_row[i + 1], p.rho);
        }
    };

    std::vector<double> k1(N), k2(N), k3(N), k4(N), tmp(N);
    for (std::size_t j = 0; j < M; ++j) {
        const double t = dt * static_cast<double>(j);
        rhs(t, y, k1);
        for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
        rhs(t + 0.5 * dt, tmp, k2);
        for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
        rhs(t + 0.5 * dt, tmp, k3);
        for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + dt * k3[i];
        rhs(t + dt, tmp, k4);
        for (std::size_t i = 0; i < N; ++i)
            y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

        for (std::size_t i = 1; i <= N; ++i) st.G(j + 1, i) = y[i - 1];
        st.G(j + 1, 0) =
            boundary_row(R, y.data(), u.v.data() + (j + 1) * u.cols, p.rho, da, N) + upow(u0[j + 1], p.rho);
        st.boundary[j + 1] = st.G(j + 1, 0);
    }
    return st;
}

MolAdjoint backward_adjoint(const ModelParams& p, const Grid& grid, const MolState& state) {
    const std::size_t N = grid.n_space;
    const std::size_t M = grid.n_time;
    const double da = grid.da;
    const double dt = grid.dt;
    const Field& G = state.G;

    if (p.gamma < 1.0) {
        for (double v : G.v)
            if (v <= 1e-12)
                throw SingularState("state at the positivity floor makes G^{gamma-1} "
                                    "singular for gamma < 1");
    }

    std::vector<double> R(N + 1), dl(N + 1);
    for (std::size_t i = 0; i <= N; ++i) {
        const double a = da * static_cast<double>(i);
        R[i] = p.recommendation(a);
        dl[i] = p.delta(a);
    }

    MolAdjoint adj;
    adj.xi = Field(M + 1, N + 1); // terminal row and outflow column stay zero

    std::vector<double> G_row(N);
    auto state_at = [&](double tau) {
        const double x = tau / dt;
        const std::size_t j =
            static_cast<std::size_t>(std::clamp(std::floor(x), 0.0, static_cast<double>(M - 1)));
        const double th = x - static_cast<double>(j);
        for (std::size_t i = 0; i < N; ++i)
            G_row[i] = (1.0 - th) * G(j, i) + th * G(j + 1, i);
    };

    // Rows i = 0 .. N-1 with the closure xi_N = 0; the i = 0 row follows the
    // same upwind difference (the continuum problem has no condition at a=0).
    auto rhs = [&](double tau, const std::vector<double>& x, std::vector<double>& dx) {
        state_at(tau);
        const double ert = std::exp(-p.discount_rate * tau);
        for (std::size_t i = 0; i < N; ++i) {
            const double src =
                p.revenue_coeff * ert * p.gamma *
                (p.gamma == 1.0 ? 1.0 : std::pow(G_row[i], p.gamma - 1.0));
            const double next = (i + 1 < N) ? x[i + 1] : 0.0;
            dx[i] = src - x[0] * R[i] + x[i] * (dl[i] + 1.0 / da) - next / da;
        }
    };

    std::vector<double> x(N, 0.0), k1(N), k2(N), k3(N), k4(N), tmp(N);
    const double h = -dt;
    for (std::size_t j = M; j >= 1; --j) {
        const double t = dt * static_cast<double>(j);
        rhs(t, x, k1);
        for (std::size_t i = 0; i < N; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
        rhs(t + 0.5 * h, tmp, k2);
        for (std::size_t i = 0; i < N; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
        rhs(t + 0.5 * h, tmp, k3);
        for (std::size_t i = 0; i < N; ++i) tmp[i] = x[i] + h * k3[i];
        rhs(t + h, tmp, k4);
        for (std::size_t i = 0; i < N; ++i)
            x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        for (std::size_t i = 0; i < N; ++i) adj.xi(j - 1, i) = x[i];
    }
    return adj;
}

} // namespace goodwill
