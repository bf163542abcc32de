#include <doctest.h>

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "betamom/ode.hpp"
#include "helpers.hpp"

using namespace betamom;
using namespace betamom::testing;

namespace {

// Closed-form reference for linear dynamics: the 2n x 2n companion system of
// X'' = -2 sqrt(mu) X' - (coefficients) integrated by matrix exponential.
struct LinearOracle {
    Eigen::MatrixXd m;

    static LinearOracle low_resolution_unit() {
        // f = x^2/2, mu = 1: X'' + 2 X' + X = 0 (critically damped).
        LinearOracle o;
        o.m.resize(2, 2);
        o.m << 0.0, 1.0, -1.0, -2.0;
        return o;
    }

    std::pair<double, double> at(double t, double x0, double v0) const {
        Eigen::MatrixXd e = (m * t).exp();
        return {e(0, 0) * x0 + e(0, 1) * v0, e(1, 0) * x0 + e(1, 1) * v0};
    }
};

}  // namespace

TEST_CASE("hr_rhs: equilibrium, heavy-ball reduction, hand value") {
    auto obj = quad_1_10();
    auto [dx, dv] = hr_rhs(1.0, 1.0 / 40.0, obj, Vec::Zero(2), Vec::Zero(2));
    CHECK(dx.norm() == 0.0);
    CHECK(dv.norm() == 0.0);

    // beta = 0 needs no Hessian and drops the velocity coupling.
    const Vec X = vec2(0.4, -0.2);
    const Vec V = vec2(-1.0, 0.5);
    auto [dx0, dv0] = hr_rhs(0.0, 1.0 / 40.0, obj, X, V);
    const Vec expected =
        -2.0 * std::sqrt(obj.mu()) * V -
        (1.0 + std::sqrt(obj.mu() / 40.0)) * obj.gradient(X);
    CHECK((dv0 - expected).norm() == 0.0);
    CHECK((dx0 - V).norm() == 0.0);

    // 1-D f = x^2/2, mu = s = 1, beta = 1, X = 1, V = 1 -> dV = -5.
    auto unit = unit_parabola();
    auto [dxu, dvu] = hr_rhs(1.0, 1.0, unit, Vec::Ones(1), Vec::Ones(1));
    CHECK(dxu[0] == 1.0);
    CHECK(dvu[0] == doctest::Approx(-5.0).epsilon(1e-15));
}

TEST_CASE("lr_rhs: equilibrium and hand value") {
    auto unit = unit_parabola();
    auto [dx, dv] = lr_rhs(unit, Vec::Zero(1), Vec::Zero(1));
    CHECK(dx.norm() == 0.0);
    CHECK(dv.norm() == 0.0);
    auto [dx1, dv1] = lr_rhs(unit, Vec::Ones(1), Vec::Zero(1));
    CHECK(dv1[0] == -1.0);
    (void)dx1;
}

TEST_CASE("hr_rhs approaches lr_rhs as s -> 0") {
    auto obj = quad_1_10();
    TestRng rng(3);
    const double s = 1e-12;
    for (int i = 0; i < 50; ++i) {
        const Vec X = rng.vec_in_cube(2, 0.4);
        const Vec V = rng.vec_in_cube(2, 0.4);
        auto [hx, hv] = hr_rhs(1.0, s, obj, X, V);
        auto [lx, lv] = lr_rhs(obj, X, V);
        CHECK((hv - lv).norm() <= 1e-5);
        CHECK((hx - lx).norm() == 0.0);
    }
}

TEST_CASE("hr_rhs without a Hessian oracle: capability error and fd fallback") {
    // Same quadratic, but constructed without the Hessian-vector oracle.
    Vec diag = vec2(1.0, 10.0);
    auto bare = Objective(
        2, [diag](const Vec& x) { return 0.5 * (diag.array() * x.array().square()).sum(); },
        [diag](const Vec& x) -> Vec { return diag.cwiseProduct(x); }, nullptr, 1.0, 10.0,
        0.0, Vec::Zero(2), 0.0);
    const Vec X = vec2(1.0, -1.0);
    const Vec V = vec2(0.5, 2.0);
    CHECK_THROWS_AS(hr_rhs(0.5, 0.01, bare, X, V), MissingHessianError);
    CHECK_NOTHROW(hr_rhs(0.0, 0.01, bare, X, V));

    auto patched = add_fd_hessian(bare);
    auto exact = quad_1_10();
    CHECK((patched.hessian_vec(X, V) - exact.hessian_vec(X, V)).norm() <=
          1e-6 * (1.0 + exact.hessian_vec(X, V).norm()));
    auto [dx, dv] = hr_rhs(0.5, 0.01, patched, X, V);
    auto [ex, ev] = hr_rhs(0.5, 0.01, exact, X, V);
    CHECK((dv - ev).norm() <= 1e-5);
    (void)dx;
    (void)ex;
}

TEST_CASE("integrate: equilibrium is preserved exactly") {
    auto obj = quad_1_10();
    auto sol = integrate_hr(1.0, 1.0 / 40.0, obj, Vec::Zero(2), 5.0, 1e-2);
    for (const auto& x : sol.positions) CHECK(x.norm() == 0.0);
    for (const auto& v : sol.velocities) CHECK(v.norm() == 0.0);
}

TEST_CASE("integrate: matches the matrix-exponential oracle to 1e-8") {
    auto unit = unit_parabola();
    auto oracle = LinearOracle::low_resolution_unit();
    auto sol = integrate(make_lr_field(unit), Vec::Ones(1), Vec::Zero(1), 5.0, 1e-3);
    auto [xe, ve] = oracle.at(sol.times.back(), 1.0, 0.0);
    CHECK(std::abs(sol.positions.back()[0] - xe) <= 1e-8);
    CHECK(std::abs(sol.velocities.back()[0] - ve) <= 1e-8);
}

TEST_CASE("integrate: grid is uniform and covers t_end") {
    auto unit = unit_parabola();
    auto sol = integrate(make_lr_field(unit), Vec::Ones(1), Vec::Zero(1), 1.0, 0.3);
    REQUIRE(sol.grid_points() == 5);  // ceil(1/0.3) = 4 steps
    for (int i = 1; i < sol.grid_points(); ++i) {
        CHECK(sol.times[static_cast<size_t>(i)] ==
              doctest::Approx(0.3 * i).epsilon(1e-15));
    }
    CHECK(sol.times.back() >= 1.0);
}

TEST_CASE("integrate: fourth-order convergence against the oracle") {
    auto unit = unit_parabola();
    auto oracle = LinearOracle::low_resolution_unit();
    auto error_at = [&](double h) {
        auto sol = integrate(make_lr_field(unit), Vec::Ones(1), Vec::Zero(1), 5.0, h);
        auto [xe, ve] = oracle.at(sol.times.back(), 1.0, 0.0);
        (void)ve;
        return std::abs(sol.positions.back()[0] - xe);
    };
    const double e1 = error_at(1e-2);
    const double e2 = error_at(5e-3);
    const double e3 = error_at(2.5e-3);
    CHECK(e1 / e2 >= 14.0);
    CHECK(e1 / e2 <= 18.0);
    CHECK(e2 / e3 >= 14.0);
    CHECK(e2 / e3 <= 18.0);
}

TEST_CASE("integrate: blowup raises with a time stamp") {
    auto obj = quad_1_10();
    try {
        integrate(make_lr_field(obj), vec2(1.0, 1.0), Vec::Zero(2), 1e4, 10.0);
        FAIL("expected blowup");
    } catch (const IntegrationBlowupError& e) {
        CHECK(e.time > 0.0);
    }
}

TEST_CASE("ode_grid_step divides sqrt(s) into at least 50 substeps") {
    for (double s : {1.0 / 40.0, 1.0 / 160.0, 1.0 / 640.0}) {
        auto [h, n] = ode_grid_step(s, 10.0);
        CHECK(n >= 50);
        CHECK(h * n == doctest::Approx(std::sqrt(s)).epsilon(1e-15));
        CHECK(h <= std::min(std::sqrt(s), 1.0 / std::sqrt(10.0)) / 50.0 * (1 + 1e-12));
    }
}

TEST_CASE("deviation: zero from the minimizer, span errors otherwise") {
    auto obj = quad_1_10();
    const double s = 1.0 / 40.0;
    auto [h, n] = ode_grid_step(s, obj.lip());
    (void)n;
    auto traj = run(family_config(1.0, s, 40), obj, Vec::Zero(2));
    auto sol = integrate_hr(1.0, s, obj, Vec::Zero(2), 5.0, h);
    CHECK(deviation(traj, sol, 5.0) == 0.0);
    CHECK_THROWS_AS(deviation(traj, sol, 100.0), SpanError);
}

TEST_CASE("continuous_rate_check: constants and passing runs across the beta grid") {
    auto obj = quad_1_10();
    const double s = 1.0 / 40.0;
    auto [h, n] = ode_grid_step(s, obj.lip());
    (void)n;
    for (double beta : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        auto sol = integrate_hr(beta, s, obj, vec2(1.0, 1.0), 40.0, h);
        auto report = continuous_rate_check(sol, obj, beta, s);
        CHECK(report.hypothesis_satisfied);
        CHECK(report.max_ratio <= 1.0);
        CHECK(report.pass);
    }

    auto sol = integrate_hr(0.5, s, obj, vec2(1.0, 1.0), 1.0, h);
    CHECK(continuous_rate_check(sol, obj, 1.0, s).bound_constant == 2.0);
    CHECK(continuous_rate_check(sol, obj, 0.0, s).bound_constant == 3.5);
}

TEST_CASE("continuous_rate_check: out-of-hypothesis steps are flagged") {
    auto obj = quad_1_10();
    const double s = 0.5;  // > 1/L
    auto sol = integrate_hr(0.0, s, obj, vec2(1.0, 1.0), 5.0, 1e-3);
    auto report = continuous_rate_check(sol, obj, 0.0, s);
    CHECK_FALSE(report.hypothesis_satisfied);
}

TEST_CASE("velocity bound stays of the same order over long horizons") {
    // sup_t ||X'(t)|| over [0, 40/sqrt(mu)] at most 10x its value on [0, 1/sqrt(mu)],
    // and the gradient norm likewise.
    auto obj = quad_1_10();
    const double s = 1.0 / 40.0;
    auto [h, n] = ode_grid_step(s, obj.lip());
    (void)n;
    for (double beta : {0.0, 0.5, 1.0}) {
        auto sol = integrate_hr(beta, s, obj, vec2(1.0, 1.0), 40.0, h);
        double early_v = 0.0, all_v = 0.0, early_g = 0.0, all_g = 0.0;
        for (int i = 0; i < sol.grid_points(); ++i) {
            const auto u = static_cast<size_t>(i);
            const double vn = sol.velocities[u].norm();
            const double gn = obj.gradient(sol.positions[u]).norm();
            all_v = std::max(all_v, vn);
            all_g = std::max(all_g, gn);
            if (sol.times[u] <= 1.0) {
                early_v = std::max(early_v, vn);
                early_g = std::max(early_g, gn);
            }
        }
        CHECK(std::isfinite(all_v));
        CHECK(all_v <= 10.0 * early_v);
        CHECK(all_g <= 10.0 * early_g);
    }
}
