#include <doctest.h>

#include <cmath>

#include "betamom/energy.hpp"
#include "betamom/ode.hpp"
#include "betamom/phase.hpp"
#include "helpers.hpp"

using namespace betamom;
using namespace betamom::testing;

TEST_CASE("continuous energy: hand values") {
    auto unit = unit_parabola();
    CHECK(continuous_energy(0.0, 1.0, unit, Vec::Zero(1), Vec::Zero(1)) == 0.0);
    CHECK(continuous_energy(0.0, 1.0, unit, Vec::Ones(1), Vec::Zero(1)) ==
          doctest::Approx(2.0).epsilon(1e-15));
    CHECK(continuous_energy(1.0, 1.0, unit, Vec::Ones(1), Vec::Zero(1)) ==
          doctest::Approx(3.25).epsilon(1e-15));
}

TEST_CASE("dissipation slack: hand value, zero at rest, nonnegative on [0,1]") {
    auto unit = unit_parabola();
    CHECK(continuous_decrement_delta(1.0, 1.0, unit, Vec::Zero(1), Vec::Zero(1)) == 0.0);
    CHECK(continuous_decrement_delta(1.0, 1.0, unit, Vec::Ones(1), Vec::Zero(1)) ==
          doctest::Approx(0.5625).epsilon(1e-15));

    auto obj = quad_1_10();
    TestRng rng(21);
    for (int i = 0; i < 500; ++i) {
        const double beta = rng.uniform();
        const double s = rng.uniform(1e-4, 0.09);
        const Vec X = rng.vec_in_cube(2, 3.0);
        const Vec V = rng.vec_in_cube(2, 3.0);
        CHECK(continuous_decrement_delta(beta, s, obj, X, V) >= 0.0);
    }
}

TEST_CASE("discrete energy: hand value and limits") {
    auto unit = unit_parabola();
    CHECK(discrete_energy(1.0, 0.25, unit, Vec::Zero(1), Vec::Zero(1)) == 0.0);
    CHECK(discrete_energy(1.0, 0.25, unit, Vec::Ones(1), Vec::Zero(1)) ==
          doctest::Approx(6.3125).epsilon(1e-15));
    CHECK_THROWS_AS(discrete_energy(1.0, 1.0, unit, Vec::Ones(1), Vec::Zero(1)),
                    ParameterDomainError);
}

TEST_CASE("discrete energy at beta = 0 is a sum of nonnegative terms") {
    auto obj = quad_1_10();
    TestRng rng(8);
    for (int i = 0; i < 500; ++i) {
        const Vec x = rng.vec_in_cube(2, 4.0);
        const Vec v = rng.vec_in_cube(2, 4.0);
        CHECK(discrete_energy(0.0, 1.0 / 40.0, obj, x, v) >= 0.0);
    }
}

TEST_CASE("initial energy bound E(0) <= C L ||x0 - x*||^2") {
    auto obj = quad_1_10();
    const Vec x0 = vec2(1.0, 1.0);
    const double r2 = x0.squaredNorm();
    for (double beta : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        for (double s : {1.0 / 40.0, 1.0 / 80.0}) {
            const Vec v0 = initial_velocity(s, obj, x0);
            const double e0 = discrete_energy(beta, s, obj, x0, v0);
            const double c = energy_constant(beta, s, obj.mu(), obj.lip());
            CHECK(e0 <= c * obj.lip() * r2);
        }
    }
}

TEST_CASE("continuous decay: equilibrium start has zero violations") {
    auto obj = quad_1_10();
    auto sol = integrate_hr(1.0, 1.0 / 40.0, obj, Vec::Zero(2), 5.0, 1e-2);
    auto series = check_continuous_decay(sol, 1.0, 1.0 / 40.0, obj);
    CHECK(series.violation_count() == 0);
    for (double e : series.values) CHECK(e == 0.0);
}

TEST_CASE("continuous decay: clean run and integrated exponential envelope") {
    auto obj = quad_1_10();
    const double s = 1.0 / 40.0;
    auto [h, n] = ode_grid_step(s, obj.lip());
    (void)n;
    auto sol = integrate_hr(1.0, s, obj, vec2(1.0, 1.0), 40.0, h);
    auto series = check_continuous_decay(sol, 1.0, s, obj);
    CHECK(series.violation_count() == 0);
    CHECK(series.binding);

    const double e0 = series.values.front();
    const double decay = std::sqrt(obj.mu()) / 4.0;
    for (size_t i = 0; i < series.values.size(); ++i) {
        CHECK(series.values[i] <=
              e0 * std::exp(-decay * sol.times[i]) * (1.0 + 1e-9) + 1e-30);
    }
}

TEST_CASE("continuous decay: rejects mismatched tags") {
    auto obj = quad_1_10();
    auto sol = integrate_hr(1.0, 1.0 / 40.0, obj, vec2(1.0, 1.0), 2.0, 1e-2);
    CHECK_THROWS_AS(check_continuous_decay(sol, 0.5, 1.0 / 40.0, obj), ConfigurationError);
    CHECK_THROWS_AS(check_continuous_decay(sol, 1.0, 1.0 / 80.0, obj), ConfigurationError);
}

TEST_CASE("discrete decrement: constant trajectory at the minimizer") {
    auto obj = quad_1_10();
    auto traj = run(family_config(1.0, 1.0 / 40.0, 50), obj, Vec::Zero(2));
    auto series = check_discrete_decrement(traj, 1.0, 1.0 / 40.0, obj);
    CHECK(series.violation_count() == 0);
    for (size_t k = 0; k + 1 < series.values.size(); ++k) {
        CHECK(series.values[k] == 0.0);
        CHECK(series.decrements[k] == 0.0);
    }
}

TEST_CASE("discrete decrement: 500 clean steps in the supercritical regime") {
    auto obj = quad_1_10();
    const double s = 1.0 / 40.0;
    auto traj = run(family_config(1.0, s, 501), obj, vec2(1.0, 1.0));
    auto series = check_discrete_decrement(traj, 1.0, s, obj);
    CHECK(series.binding);
    CHECK(series.violation_count() == 0);
    CHECK(series.gap_form_violations == 0);
}

TEST_CASE("discrete decrement: subcritical beta uses the A/B branch") {
    auto obj = quad_1_10();
    const double s = 1.0 / 40.0;
    const auto ab = coefficients_AB(0.3, s, obj.mu(), obj.lip());
    CHECK(ab.ratio() < 1.0 / 6.0);
    auto traj = run(family_config(0.3, s, 501), obj, vec2(1.0, 1.0));
    auto series = check_discrete_decrement(traj, 0.3, s, obj);
    CHECK(series.violation_count() == 0);
    // consequently E(k) <= E(0) / (1 + sqrt(mu s) A/B)^k
    const double rate = 1.0 + std::sqrt(obj.mu() * s) * ab.ratio();
    for (size_t k = 0; k < series.values.size(); ++k) {
        CHECK(series.values[k] <=
              series.values[0] / std::pow(rate, static_cast<double>(k)) *
                      (1.0 + 1e-9) +
                  1e-12);
    }
}

TEST_CASE("discrete decrement: hypothesis gating and config checks") {
    auto obj = quad_1_10();
    const double s = 1.0 / 20.0;  // above 1/(4L) = 1/40 but mu*s < 1
    auto traj = run(family_config(1.0, s, 100), obj, vec2(1.0, 1.0));
    auto series = check_discrete_decrement(traj, 1.0, s, obj);
    CHECK_FALSE(series.binding);  // computed but non-binding

    CHECK_THROWS_AS(check_discrete_decrement(traj, 0.5, s, obj), ConfigurationError);
    auto gd = run(family_config(0.0, 0.05, 10, Variant::gradient_descent), obj,
                  vec2(1.0, 1.0));
    CHECK_THROWS_AS(check_discrete_decrement(gd, 0.0, 0.05, obj), ConfigurationError);
}
