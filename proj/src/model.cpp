#include "goodwill/model.hpp"

#include <cmath>
#include <string>

#include "goodwill/errors.hpp"

namespace goodwill {

namespace {

void require(bool cond, const std::string& what) {
    if (!cond) throw ConfigError(what);
}

} // namespace

void validate_params(const ModelParams& p) {
    require(static_cast<bool>(p.delta), "delta function is not set");
    require(static_cast<bool>(p.recommendation), "recommendation function is not set");
    require(static_cast<bool>(p.initial_goodwill), "initial_goodwill function is not set");
    require(p.rho > 0.0 && p.rho <= 1.0, "rho must lie in (0, 1]");
    require(p.gamma > 0.0 && p.gamma <= 1.0, "gamma must lie in (0, 1]");
    require(p.discount_rate > 0.0, "discount_rate must be positive");
    require(p.beta > 0.0, "beta must be positive");
    require(p.revenue_coeff >= 0.0, "revenue_coeff must be nonnegative");
    require(p.fixed_cost >= 0.0, "fixed_cost must be nonnegative");
    require(p.horizon > 0.0, "horizon must be positive");
    require(p.max_intensity > 0.0, "max_intensity must be positive");
    for (int k = 0; k <= 8; ++k) {
        const double a = static_cast<double>(k) / 8.0;
        require(p.initial_goodwill(a) > 0.0, "initial_goodwill must be strictly positive");
        require(p.delta(a) >= 0.0, "delta must be nonnegative");
        require(p.recommendation(a) >= 0.0, "recommendation must be nonnegative");
    }
}

Grid::Grid(std::size_t n, std::size_t m, double T)
    : n_space(n), n_time(m), horizon(T) {
    if (n < 2) throw ConfigError("grid needs at least 2 space intervals");
    if (m < 2) throw ConfigError("grid needs at least 2 time steps");
    if (!(T > 0.0)) throw ConfigError("grid horizon must be positive");
    da = 1.0 / static_cast<double>(n);
    dt = T / static_cast<double>(m);
    if (dt > da * (1.0 + 1e-12))
        throw CflViolation("time step " + std::to_string(dt) +
                           " exceeds the upwind bound da = " + std::to_string(da));
}

double trapezoid(const std::vector<double>& vals, double h) {
    if (vals.size() < 2) return 0.0;
    double s = 0.5 * (vals.front() + vals.back());
    for (std::size_t i = 1; i + 1 < vals.size(); ++i) s += vals[i];
    return h * s;
}

double discount_factor(const ModelParams& p, double a, std::size_t panels) {
    if (a <= 0.0) return 1.0;
    const double h = a / static_cast<double>(panels);
    double s = 0.5 * (p.delta(0.0) + p.delta(a));
    for (std::size_t k = 1; k < panels; ++k) s += p.delta(h * static_cast<double>(k));
    return std::exp(-h * s);
}

std::vector<double> discount_nodes(const ModelParams& p, std::size_t n_space) {
    const double h = 1.0 / static_cast<double>(n_space);
    std::vector<double> D(n_space + 1);
    D[0] = 1.0;
    double acc = 0.0;
    double prev = p.delta(0.0);
    for (std::size_t i = 1; i <= n_space; ++i) {
        const double cur = p.delta(h * static_cast<double>(i));
        acc += 0.5 * h * (prev + cur);
        D[i] = std::exp(-acc);
        prev = cur;
    }
    return D;
}

std::pair<bool, double> stability_check(const ModelParams& p, std::size_t quad_nodes) {
    const double h = 1.0 / static_cast<double>(quad_nodes);
    // Accumulate D by the same trapezoid rule, then integrate R D.
    double acc = 0.0;
    double prev_delta = p.delta(0.0);
    std::vector<double> vals(quad_nodes + 1);
    vals[0] = p.recommendation(0.0);
    for (std::size_t k = 1; k <= quad_nodes; ++k) {
        const double a = h * static_cast<double>(k);
        const double cur_delta = p.delta(a);
        acc += 0.5 * h * (prev_delta + cur_delta);
        prev_delta = cur_delta;
        vals[k] = p.recommendation(a) * std::exp(-acc);
    }
    const double value = trapezoid(vals, h);
    return {value < 1.0, value};
}

double renewal_multiplier(const ModelParams& p) {
    const auto [ok, value] = stability_check(p, 10000);
    if (!ok)
        throw StabilityViolation("int R D = " + std::to_string(value) +
                                 " >= 1: the renewal operator is not a contraction");
    return 1.0 / (1.0 - value);
}

BoundarySeries aggregate_boundary_control(const ModelParams& p, const Field& u,
                                          const BoundarySeries& u0) {
    const std::size_t n = u.cols - 1;
    const double h = 1.0 / static_cast<double>(n);
    BoundarySeries w(u.rows);
    std::vector<double> row(n + 1);
    for (std::size_t j = 0; j < u.rows; ++j) {
        if (u0[j] < 0.0) throw NegativeControl("u0 is negative at time node " + std::to_string(j));
        for (std::size_t i = 0; i <= n; ++i) {
            const double v = u(j, i);
            if (v < 0.0)
                throw NegativeControl("u is negative at node (" + std::to_string(j) + ", " +
                                      std::to_string(i) + ")");
            row[i] = std::pow(v, p.rho);
        }
        w[j] = trapezoid(row, h) + std::pow(u0[j], p.rho);
    }
    return w;
}

Field lifted_boundary(const ModelParams& p, const Grid& grid, const BoundarySeries& w) {
    const double mu = renewal_multiplier(p);
    const auto D = discount_nodes(p, grid.n_space);
    Field g(grid.n_time + 1, grid.n_space + 1);
    for (std::size_t j = 0; j <= grid.n_time; ++j)
        for (std::size_t i = 0; i <= grid.n_space; ++i)
            g(j, i) = mu * w[j] * D[i];
    return g;
}

} // namespace goodwill
