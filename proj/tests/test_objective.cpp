#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "goodwill/errors.hpp"
#include "goodwill/mol.hpp"
#include "goodwill/model.hpp"
#include "goodwill/objective.hpp"
#include "goodwill/presets.hpp"

#include "helpers.hpp"

using namespace goodwill;

TEST_CASE("unit goodwill, no control: pure discounted revenue") {
    // J = K (1 - e^{-rT}) / r for G = 1, any gamma.
    ModelParams p = preset_params("lq_rho1_eps1");
    Grid g(50, 50, 1.0);
    auto res = evaluate(p, g, testutil::constant_field(g, 1.0),
                        testutil::constant_field(g, 0.0),
                        testutil::constant_series(g, 0.0));
    const double exact = p.revenue_coeff *
        (1.0 - std::exp(-p.discount_rate * p.horizon)) / p.discount_rate;
    CHECK(res.total == doctest::Approx(exact).epsilon(1e-6));
    CHECK(res.revenue == doctest::Approx(exact).epsilon(1e-6));
    CHECK(res.ad_cost == doctest::Approx(0.0));
    CHECK(res.fixed == doctest::Approx(0.0));

    auto q = p;
    q.gamma = 0.1; // G = 1 makes the elasticity invisible
    auto res2 = evaluate(q, g, testutil::constant_field(g, 1.0),
                         testutil::constant_field(g, 0.0),
                         testutil::constant_series(g, 0.0));
    CHECK(res2.total == doctest::Approx(res.total).epsilon(1e-12));
}

TEST_CASE("advertising cost with a negligible discount rate") {
    ModelParams p = preset_params("lq_rho1_eps1");
    p.discount_rate = 1e-9;
    Grid g(40, 40, 1.0);
    auto res = evaluate(p, g, testutil::constant_field(g, 0.0),
                        testutil::constant_field(g, 0.4),
                        testutil::constant_series(g, 0.3));
    // (beta/2)(0.16 + 0.09) T = 0.08 * 0.25
    CHECK(res.ad_cost == doctest::Approx(0.02).epsilon(1e-6));
    CHECK(res.revenue == doctest::Approx(0.0));
    CHECK(res.total == doctest::Approx(-0.02).epsilon(1e-6));
}

TEST_CASE("fixed cost enters with full weight") {
    ModelParams p = preset_params("lq_rho1_eps1");
    p.discount_rate = 1e-9;
    p.fixed_cost = 0.25;
    Grid g(20, 20, 1.0);
    auto res = evaluate(p, g, testutil::constant_field(g, 0.0),
                        testutil::constant_field(g, 0.0),
                        testutil::constant_series(g, 0.0));
    CHECK(res.fixed == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(res.total == doctest::Approx(-0.25).epsilon(1e-6));
}

TEST_CASE("revenue scales linearly in the revenue coefficient") {
    ModelParams p = preset_params("lq_rho05_eps01");
    Grid g(25, 25, 1.0);
    auto G = testutil::constant_field(g, 1.3);
    auto u = testutil::constant_field(g, 0.2);
    auto u0 = testutil::constant_series(g, 0.1);
    auto a = evaluate(p, g, G, u, u0);
    auto q = p;
    q.revenue_coeff = 2.0 * p.revenue_coeff;
    auto b = evaluate(q, g, G, u, u0);
    CHECK(b.revenue == doctest::Approx(2.0 * a.revenue).epsilon(1e-12));
    CHECK(b.ad_cost == doctest::Approx(a.ad_cost).epsilon(1e-12));
}

TEST_CASE("frozen no-control profit at the study parameters") {
    struct Row { const char* name; std::size_t n; double j0; };
    const Row rows[] = {
        {"lq_rho05_eps01", 25, 0.3258094275},
        {"lq_rho1_eps1", 25, 0.2847042502},
        {"lq_rho05_eps01", 50, 0.3262594905},
        {"lq_rho1_eps1", 50, 0.2885472231},
    };
    for (const auto& row : rows) {
        ModelParams p = preset_params(row.name);
        Grid g(row.n, row.n, 1.0);
        auto u = testutil::constant_field(g, 0.0);
        auto u0 = testutil::constant_series(g, 0.0);
        auto st = forward_state(p, g, u, u0);
        CAPTURE(row.name); CAPTURE(row.n);
        CHECK(evaluate(p, g, st.G, u, u0).total == doctest::Approx(row.j0).epsilon(1e-8));
    }
}

TEST_CASE("quadrature error decays at second order on smooth data") {
    ModelParams p = preset_params("lq_rho1_eps1");
    auto smooth_J = [&](std::size_t n) {
        Grid g(n, n, 1.0);
        Field G(g.n_time + 1, g.n_space + 1);
        for (std::size_t j = 0; j <= g.n_time; ++j)
            for (std::size_t i = 0; i <= g.n_space; ++i) {
                const double t = static_cast<double>(j) * g.dt;
                const double a = static_cast<double>(i) * g.da;
                G(j, i) = 1.5 + 0.5 * std::sin(M_PI * a) * std::cos(t);
            }
        return evaluate(p, g, G, testutil::constant_field(g, 0.0),
                        testutil::constant_series(g, 0.0)).total;
    };
    const double ref = smooth_J(400);
    const double e25 = std::abs(smooth_J(25) - ref);
    const double e50 = std::abs(smooth_J(50) - ref);
    CHECK(e25 / e50 == doctest::Approx(4.0).epsilon(0.3));
}

TEST_CASE("negative state entries are rejected beyond the round-off floor") {
    ModelParams p = preset_params("lq_rho05_eps1");
    Grid g(10, 10, 1.0);
    auto u = testutil::constant_field(g, 0.0);
    auto u0 = testutil::constant_series(g, 0.0);

    auto G = testutil::constant_field(g, 1.0);
    G(3, 3) = -1e-3;
    CHECK_THROWS_AS(evaluate(p, g, G, u, u0), NegativeState);

    // Entries inside the round-off floor are clamped to zero, not rejected.
    auto H = testutil::constant_field(g, 1.0);
    H(3, 3) = -1e-13;
    auto res = evaluate(p, g, H, u, u0);
    CHECK(std::isfinite(res.total));
}
