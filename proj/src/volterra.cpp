#include "goodwill/volterra.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "goodwill/errors.hpp"

namespace goodwill {

std::vector<double> volterra_grid(const std::vector<double>& forcing,
                                  const std::vector<double>& kernel, double h) {
    const std::size_t n = forcing.size() - 1;
    const double denom = 1.0 - 0.5 * h * kernel[0];
    if (denom <= 0.0)
        throw SingularStep("trapezoid step too coarse: 1 - (dt/2) K(0) = " +
                           std::to_string(denom));
    std::vector<double> b(n + 1);
    b[0] = forcing[0];
    for (std::size_t j = 1; j <= n; ++j) {
        double s = 0.5 * kernel[j] * b[0];
        for (std::size_t l = 1; l < j; ++l) s += kernel[j - l] * b[l];
        b[j] = (forcing[j] + h * s) / denom;
    }
    return b;
}

BoundaryDensity solve_volterra(const VolterraProblem& problem, std::size_t steps) {
    const double h = problem.t_max / static_cast<double>(steps);
    std::vector<double> K(steps + 1), F(steps + 1);
    for (std::size_t j = 0; j <= steps; ++j) {
        const double t = h * static_cast<double>(j);
        K[j] = problem.kernel(t);
        F[j] = problem.forcing(t);
    }
    BoundaryDensity out;
    out.b = volterra_grid(F, K, h);
    out.dt = h;

    // Defensive residual audit: the recursion solves the trapezoid-discretized
    // equation exactly, so any visible residual signals a logic error.
    double sup = 0.0;
    for (double v : out.b) sup = std::max(sup, std::abs(v));
    double worst = 0.0;
    for (std::size_t j = 0; j <= steps; ++j) {
        if (j == 0) {
            worst = std::max(worst, std::abs(out.b[0] - F[0]));
            continue;
        }
        double s = 0.5 * (K[j] * out.b[0] + K[0] * out.b[j]);
        for (std::size_t l = 1; l < j; ++l) s += K[j - l] * out.b[l];
        worst = std::max(worst, std::abs(out.b[j] - F[j] - h * s));
    }
    if (worst > 1e-6 * (1.0 + sup))
        throw SolverError("volterra residual " + std::to_string(worst) +
                          " exceeds its tolerance");
    return out;
}

BoundaryDensity derivative_bd(const ModelParams& p, std::size_t steps) {
    const double h = p.horizon / static_cast<double>(steps);
    // Grid-consistent kernel K(t) = R(t) D(t) 1_{t <= 1}, with D accumulated by
    // the trapezoid rule along the same nodes.
    std::vector<double> K(steps + 1, 0.0);
    double acc = 0.0;
    double prev = p.delta(0.0);
    K[0] = p.recommendation(0.0);
    std::size_t last_in = 0; // last node with t <= 1
    for (std::size_t j = 1; j <= steps; ++j) {
        const double t = h * static_cast<double>(j);
        if (t > 1.0 + 1e-12) break;
        const double cur = p.delta(t);
        acc += 0.5 * h * (prev + cur);
        prev = cur;
        K[j] = p.recommendation(t) * std::exp(-acc);
        last_in = j;
    }

    std::vector<double> prefix(K.begin(), K.begin() + static_cast<long>(last_in) + 1);
    const double int_rd = trapezoid(prefix, h);
    if (int_rd >= 1.0)
        throw StabilityViolation("int R D = " + std::to_string(int_rd) + " >= 1");
    const double mu = 1.0 / (1.0 - int_rd);

    // Forcings: F_D(t) = int_t^1 K (for the density itself) and -K/mu (for its
    // derivative), both vanishing past the age span.
    std::vector<double> Fb(steps + 1, 0.0), Fd(steps + 1, 0.0);
    double tail = int_rd;
    for (std::size_t j = 0; j <= last_in; ++j) {
        Fb[j] = tail;
        Fd[j] = -K[j] / mu;
        if (j < last_in) tail -= 0.5 * h * (K[j] + K[j + 1]);
    }

    BoundaryDensity out;
    out.b = volterra_grid(Fb, K, h);
    out.db = volterra_grid(Fd, K, h);
    out.dt = h;
    return out;
}

} // namespace goodwill
