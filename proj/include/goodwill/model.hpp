#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "goodwill/errors.hpp"

namespace goodwill {

// A scalar function of the usage-experience coordinate a in [0,1].
using SegmentFunction = std::function<double(double)>;

// Model definition: the goodwill PDE
//   G_t + G_a + delta(a) G = u^rho            on [0,T] x [0,1]
//   G(t,0) = int_0^1 (R G + u^rho) da + u0^rho
//   G(0,a) = G0(a)
// and the discounted profit functional
//   J = int_0^1 int_0^T e^{-rt} (K G^gamma - (beta/2)(u^2 + u0^2) - c_f) dt da.
struct ModelParams {
    static constexpr double kUnbounded = std::numeric_limits<double>::infinity();

    SegmentFunction delta;            // depreciation rate, a -> [0,1]
    SegmentFunction recommendation;   // recommendation rate R(a) >= 0
    double rho = 1.0;                 // advertising response exponent, (0,1]
    double gamma = 1.0;               // goodwill elasticity of demand, (0,1]
    double discount_rate = 0.028;     // interest rate r > 0
    double beta = 0.16;               // unit advertising cost > 0
    double revenue_coeff = 0.34;      // K > 0
    double fixed_cost = 0.0;          // c_f >= 0, constant in time
    double horizon = 1.0;             // product life cycle T > 0
    double max_intensity = kUnbounded;// I; infinity means unbounded controls
    SegmentFunction initial_goodwill; // G0(a) > 0
};

// Throws ConfigError if a scalar parameter is out of range, or if G0 is not
// strictly positive at the probed nodes.
void validate_params(const ModelParams& p);

// Uniform space-time mesh: nodes a_i = i/N (i=0..N), t_j = j*T/M (j=0..M).
// Construction enforces the CFL condition dt <= da for the upwind transport
// scheme.
struct Grid {
    std::size_t n_space; // N >= 2
    std::size_t n_time;  // M >= 2
    double horizon;      // T
    double da;
    double dt;

    Grid(std::size_t n, std::size_t m, double T);
};

// Scalar function sampled on the grid; entry (j,i) lives at (t_j, a_i).
struct Field {
    std::size_t rows = 0; // M+1 time nodes
    std::size_t cols = 0; // N+1 space nodes
    std::vector<double> v;

    Field() = default;
    Field(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), v(r * c, fill) {}

    double& operator()(std::size_t j, std::size_t i) { return v[j * cols + i]; }
    double operator()(std::size_t j, std::size_t i) const { return v[j * cols + i]; }
};

// Scalar function of time only, sampled at the M+1 time nodes.
using BoundarySeries = std::vector<double>;

// D(a) = exp(-int_0^a delta), composite trapezoid on `panels` uniform
// subintervals of [0,a].  D(0)=1, 0 < D(a) <= 1 for delta >= 0.
double discount_factor(const ModelParams& p, double a, std::size_t panels = 4096);

// (pass, value) with value = int_0^1 R(a) D(a) da by composite trapezoid on
// quad_nodes+1 uniform nodes (D accumulated on the same nodes); pass iff
// value < 1.
std::pair<bool, double> stability_check(const ModelParams& p, std::size_t quad_nodes);

// mu = 1/(1 - int R D), > 1 when the integral is in (0,1), exactly 1 for
// R == 0.  Throws StabilityViolation when int R D >= 1.
double renewal_multiplier(const ModelParams& p);

// w(t_j) = int_0^1 u^rho(t_j, a) da + u0^rho(t_j), trapezoid over all N+1
// space nodes.  Throws NegativeControl on a negative entry.
BoundarySeries aggregate_boundary_control(const ModelParams& p, const Field& u,
                                          const BoundarySeries& u0);

// Lifted boundary profile g(t_j, a_i) = mu * w(t_j) * D(a_i).
Field lifted_boundary(const ModelParams& p, const Grid& grid, const BoundarySeries& w);

// Shared helpers for the solver modules ------------------------------------

// D at the N+1 grid nodes, cumulative trapezoid of delta on the grid.
std::vector<double> discount_nodes(const ModelParams& p, std::size_t n_space);

// Composite trapezoid of nodal values with uniform step h.
double trapezoid(const std::vector<double>& vals, double h);

} // namespace goodwill
