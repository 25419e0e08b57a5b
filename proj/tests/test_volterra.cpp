#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "goodwill/errors.hpp"
#include "goodwill/model.hpp"
#include "goodwill/presets.hpp"
#include "goodwill/volterra.hpp"

#include "helpers.hpp"

using namespace goodwill;

namespace {

// Forcing profile F_phi(t_j) = int_{t_j}^1 phi(s - t_j) R(s) D(s) / D(s - t_j) ds
// by composite trapezoid on the shared uniform nodes; the building block of
// the renewal densities.  Re-derived here independently of the library so the
// sup-norm bound below is checked end to end.
std::vector<double> forcing_profile(const std::vector<double>& phi,
                                    const std::vector<double>& R,
                                    const std::vector<double>& D, double h) {
    const std::size_t n = phi.size() - 1;
    std::vector<double> F(n + 1, 0.0);
    for (std::size_t j = 0; j <= n; ++j) {
        std::vector<double> vals(n - j + 1);
        for (std::size_t m = 0; m <= n - j; ++m)
            vals[m] = phi[m] * R[j + m] * D[j + m] / D[m];
        F[j] = trapezoid(vals, h);
    }
    return F;
}

} // namespace

TEST_CASE("zero kernel returns the forcing") {
    VolterraProblem prob;
    prob.kernel = [](double) { return 0.0; };
    prob.forcing = [](double t) { return std::sin(t); };
    prob.t_max = 1.0;
    auto sol = solve_volterra(prob, 100);
    REQUIRE(sol.b.size() == 101);
    for (std::size_t j = 0; j <= 100; ++j)
        CHECK(sol.b[j] == doctest::Approx(std::sin(0.01 * static_cast<double>(j))).epsilon(1e-12));
}

TEST_CASE("closed form for constant recommendation, zero depreciation") {
    // R = 1/2, delta = 0: kernel K = 1/2 on [0,1], forcing F_D(t) = (1-t)/2,
    // and the renewal density is B_D(t) = 1 - e^{t/2}/2.
    VolterraProblem prob;
    prob.kernel = [](double t) { return t <= 1.0 ? 0.5 : 0.0; };
    prob.forcing = [](double t) { return 0.5 * (1.0 - t); };
    prob.t_max = 1.0;
    auto sol = solve_volterra(prob, 1000);

    double max_err = 0.0;
    for (std::size_t j = 0; j < sol.b.size(); ++j) {
        const double t = sol.dt * static_cast<double>(j);
        max_err = std::max(max_err, std::abs(sol.b[j] - (1.0 - 0.5 * std::exp(0.5 * t))));
    }
    CHECK(max_err <= 1e-6);
    CHECK(sol.b.back() == doctest::Approx(0.1756393561).epsilon(1e-6));
}

TEST_CASE("scheme satisfies its own quadrature identity") {
    VolterraProblem prob;
    prob.kernel = [](double t) { return 0.3 + 0.2 * t; };
    prob.forcing = [](double t) { return std::cos(t); };
    prob.t_max = 1.0;
    const std::size_t n = 400;
    auto sol = solve_volterra(prob, n);
    const double h = sol.dt;

    double worst = 0.0;
    for (std::size_t j = 0; j <= n; ++j) {
        std::vector<double> conv(j + 1);
        for (std::size_t l = 0; l <= j; ++l)
            conv[l] = prob.kernel(h * static_cast<double>(j - l)) * sol.b[l];
        const double lhs = sol.b[j];
        const double rhs = prob.forcing(h * static_cast<double>(j)) + trapezoid(conv, h);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("coarse step with a large kernel is rejected") {
    VolterraProblem prob;
    prob.kernel = [](double) { return 2.5; };
    prob.forcing = [](double) { return 1.0; };
    prob.t_max = 1.0;
    CHECK_THROWS_AS(solve_volterra(prob, 1), SingularStep); // 1 - h K(0)/2 = -0.25
}

TEST_CASE("derivative of the renewal density: closed form") {
    // Same constant-R case: B'_D(t) = -e^{t/2}/4, and B_D as above.
    auto p = testutil::synthetic_params(0.0, 0.5);
    auto sol = derivative_bd(p, 1000);
    REQUIRE(sol.db.size() == 1001);
    REQUIRE(sol.b.size() == 1001);

    double max_err_b = 0.0, max_err_db = 0.0;
    for (std::size_t j = 0; j <= 1000; ++j) {
        const double t = sol.dt * static_cast<double>(j);
        max_err_b = std::max(max_err_b, std::abs(sol.b[j] - (1.0 - 0.5 * std::exp(0.5 * t))));
        max_err_db = std::max(max_err_db, std::abs(sol.db[j] + 0.25 * std::exp(0.5 * t)));
    }
    CHECK(max_err_b <= 1e-6);
    CHECK(max_err_db <= 1e-6);
    CHECK(sol.db[0] == doctest::Approx(-0.25).epsilon(1e-7));
}

TEST_CASE("derivative of the renewal density: study parameters") {
    ModelParams paper = preset_params("lq_rho1_eps1");
    auto sol = derivative_bd(paper, 50);
    CHECK(sol.db[0] == doctest::Approx(-0.34926178).epsilon(1e-5));

    // sup-norm bound |B'_D| <= mu sup|R|.
    const double mu = renewal_multiplier(paper);
    double sup = 0.0;
    for (double v : sol.db) sup = std::max(sup, std::abs(v));
    CHECK(sup <= mu * 0.6 * (1.0 + 1e-12));
    CHECK(sup == doctest::Approx(0.349262).epsilon(1e-4));
}

TEST_CASE("grid-level solver agrees with the functional interface") {
    VolterraProblem prob;
    prob.kernel = [](double t) { return 0.4 * std::exp(-t); };
    prob.forcing = [](double t) { return 1.0 + 0.3 * t; };
    prob.t_max = 1.0;
    const std::size_t n = 64;
    auto sol = solve_volterra(prob, n);

    std::vector<double> K(n + 1), F(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        const double t = static_cast<double>(j) / static_cast<double>(n);
        K[j] = prob.kernel(t);
        F[j] = prob.forcing(t);
    }
    auto b = volterra_grid(F, K, 1.0 / static_cast<double>(n));
    REQUIRE(b.size() == sol.b.size());
    for (std::size_t j = 0; j <= n; ++j)
        CHECK(b[j] == doctest::Approx(sol.b[j]).epsilon(1e-14));
}

TEST_CASE("renewal density sup-norm bound over random profiles") {
    // For any profile phi, the renewal density satisfies
    // sup|B_phi| <= mu sup|R| sup|phi|.
    ModelParams paper = preset_params("lq_rho05_eps01");
    const std::size_t n = 50;
    const double h = 1.0 / static_cast<double>(n);
    auto D = discount_nodes(paper, n);
    std::vector<double> R(n + 1), K(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        R[i] = paper.recommendation(h * static_cast<double>(i));
        K[i] = R[i] * D[i];
    }
    const double mu = renewal_multiplier(paper);
    const double supR = 0.6; // R is decreasing from R(0) = 3/5

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> phi(n + 1);
        double sup_phi = 0.0;
        for (auto& v : phi) {
            v = unif(rng);
            sup_phi = std::max(sup_phi, std::abs(v));
        }
        auto B = volterra_grid(forcing_profile(phi, R, D, h), K, h);
        double supB = 0.0;
        for (double v : B) supB = std::max(supB, std::abs(v));
        CHECK(supB <= mu * supR * sup_phi * (1.0 + 1e-12));
    }
}
