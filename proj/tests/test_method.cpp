#include <doctest.h>

#include <cmath>
#include <cstring>

#include "betamom/method.hpp"
#include "helpers.hpp"

using namespace betamom;
using namespace betamom::testing;

namespace {

bool bitwise_equal(const Trajectory& a, const Trajectory& b) {
    if (a.iterates.size() != b.iterates.size()) return false;
    for (size_t k = 0; k < a.iterates.size(); ++k) {
        if (std::memcmp(a.iterates[k].data(), b.iterates[k].data(),
                        sizeof(double) * static_cast<size_t>(a.iterates[k].size())) != 0) {
            return false;
        }
    }
    return true;
}

double max_coordinate_diff(const Trajectory& a, const Trajectory& b) {
    double worst = 0.0;
    for (size_t k = 0; k < a.iterates.size(); ++k) {
        worst = std::max(worst, (a.iterates[k] - b.iterates[k]).cwiseAbs().maxCoeff());
    }
    return worst;
}

}  // namespace

TEST_CASE("init_state: hand value and fixed point") {
    auto obj = unit_parabola();  // mu = L = 1
    auto config = family_config(1.0, 0.25, 10);
    auto [x0, x1] = init_state(config, obj, Vec::Ones(1));
    CHECK(x0[0] == 1.0);
    CHECK(x1[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

    // implied v0 = (x1 - x0)/sqrt(s) = -2 sqrt(s) grad/(1 + sqrt(mu s))
    const double v0 = (x1[0] - x0[0]) / 0.5;
    CHECK(v0 == doctest::Approx(-2.0 / 3.0).epsilon(1e-15));

    auto [y0, y1] = init_state(config, obj, Vec::Zero(1));  // start at the minimizer
    CHECK(y1[0] == 0.0);
    (void)y0;
}

TEST_CASE("step_single_variable: stationarity and hand arithmetic") {
    auto obj = unit_parabola();
    auto config = family_config(0.7, 0.25, 10);
    CHECK(step_single_variable(config, obj, Vec::Zero(1), Vec::Zero(1))[0] == 0.0);

    Vec x_prev = Vec::Ones(1);
    Vec x_curr(1);
    x_curr << 2.0 / 3.0;
    config.beta = 1.0;
    CHECK(step_single_variable(config, obj, x_prev, x_curr)[0] ==
          doctest::Approx(5.0 / 12.0).epsilon(1e-14));
    config.beta = 0.0;
    CHECK(step_single_variable(config, obj, x_prev, x_curr)[0] ==
          doctest::Approx(7.0 / 18.0).epsilon(1e-14));
}

TEST_CASE("step_two_sequence: fixed point and domain") {
    auto obj = unit_parabola();
    auto config = family_config(0.5, 0.25, 10, Variant::two_sequence);
    auto [x_next, y_next] = step_two_sequence(config, obj, Vec::Zero(1), Vec::Zero(1));
    CHECK(x_next[0] == 0.0);
    CHECK(y_next[0] == 0.0);

    config.step = 1.0;  // mu s = 1
    CHECK_THROWS_AS(step_two_sequence(config, obj, Vec::Zero(1), Vec::Zero(1)),
                    ParameterDomainError);
}

TEST_CASE("two formulations agree to machine precision") {
    auto quad = quad_1_10();
    auto lse = make_smooth_nonquadratic(2, 1.0, 7);
    const Vec x0q = vec2(1.0, 1.0);
    const Vec x0l = lse.minimizer() + vec2(1.0, 1.0);
    for (double beta : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        for (int pick = 0; pick < 2; ++pick) {
            const Objective& obj = pick == 0 ? quad : lse;
            const Vec& x0 = pick == 0 ? x0q : x0l;
            auto single = run(family_config(beta, 1.0 / 40.0, 1000), obj, x0);
            auto twoseq =
                run(family_config(beta, 1.0 / 40.0, 1000, Variant::two_sequence), obj, x0);
            CHECK(max_coordinate_diff(single, twoseq) <= 1e-12);
        }
    }
}

TEST_CASE("beta = 0 runs bitwise-identical to the heavy-ball reference") {
    auto obj = quad_1_10();
    auto fam = run(family_config(0.0, 1.0 / 40.0, 1000), obj, vec2(1.0, 1.0));
    auto ref = run(family_config(0.0, 1.0 / 40.0, 1000, Variant::heavy_ball_reference),
                   obj, vec2(1.0, 1.0));
    CHECK(bitwise_equal(fam, ref));
}

TEST_CASE("beta = 1 runs bitwise-identical to the NAG-SC reference") {
    auto obj = quad_1_10();
    auto fam = run(family_config(1.0, 1.0 / 40.0, 1000), obj, vec2(1.0, 1.0));
    auto ref = run(family_config(1.0, 1.0 / 40.0, 1000, Variant::nag_sc_reference), obj,
                   vec2(1.0, 1.0));
    CHECK(bitwise_equal(fam, ref));
}

TEST_CASE("gradient descent solves unit curvature in one step") {
    auto obj = unit_parabola();
    auto config = family_config(0.0, 1.0, 5, Variant::gradient_descent);
    config.grad_tol = 1e-15;
    auto traj = run(config, obj, Vec::Ones(1));
    CHECK(traj.iterates.size() == 2);  // early stop right after the exact step
    CHECK(traj.iterates[1][0] == 0.0);
}

TEST_CASE("supercritical run beats the guaranteed geometric rate") {
    auto obj = quad_1_10();
    auto traj = run(family_config(1.0, 1.0 / 40.0, 500), obj, vec2(1.0, 1.0));
    const double rate = 1.0 + std::sqrt(1.0 / 40.0) / 6.0;
    CHECK(traj.gaps[500] <= traj.gaps[0] / std::pow(rate, 500));
}

TEST_CASE("heavy ball at s = 1/L on a badly conditioned quadratic completes") {
    auto obj = make_quadratic({1.0, 100.0}, Vec::Zero(2));
    auto traj = run(family_config(0.0, 0.01, 300, Variant::heavy_ball_reference), obj,
                    vec2(1.0, 1.0));
    CHECK(traj.steps() == 300);
    // gap monotonicity is NOT asserted: only the guarded step s = mu/(16 L^2)
    // carries a heavy-ball guarantee.
}

TEST_CASE("divergence raises an error carrying the iteration") {
    auto obj = make_quadratic({1.0, 100.0}, Vec::Zero(2));
    try {
        run(family_config(0.0, 0.05, 5000), obj, vec2(1.0, 1.0));
        FAIL("expected divergence");
    } catch (const DivergenceError& e) {
        CHECK(e.iteration > 0);
    }
}

TEST_CASE("trajectory stores velocities consistent with iterates") {
    auto obj = quad_1_10();
    const double s = 1.0 / 40.0;
    auto traj = run(family_config(0.5, s, 50), obj, vec2(1.0, 1.0));
    REQUIRE(traj.velocities.size() == traj.iterates.size() - 1);
    for (size_t k = 0; k < traj.velocities.size(); ++k) {
        const Vec expected = (traj.iterates[k + 1] - traj.iterates[k]) / std::sqrt(s);
        CHECK((traj.velocities[k] - expected).norm() == 0.0);
    }
    for (double gap : traj.gaps) CHECK(gap >= 0.0);
}

TEST_CASE("rearranged second-difference identity holds along runs") {
    auto obj = quad_1_10();
    const double s = 1.0 / 40.0;
    const double r = std::sqrt(obj.mu() * s);
    for (double beta : {0.0, 0.5, 1.0}) {
        auto traj = run(family_config(beta, s, 200), obj, vec2(1.0, 1.0));
        for (size_t k = 1; k + 1 < traj.iterates.size(); ++k) {
            const Vec& xm = traj.iterates[k - 1];
            const Vec& x = traj.iterates[k];
            const Vec& xp = traj.iterates[k + 1];
            const Vec residual =
                (xp + xm - 2.0 * x) / s + (2.0 * r / (1.0 - r)) * (xp - x) / s +
                beta * (obj.gradient(x) - obj.gradient(xm)) +
                ((1.0 + r) / (1.0 - r)) * obj.gradient(x);
            CHECK(residual.norm() <= 1e-10 * obj.lip());
        }
    }
}

TEST_CASE("velocity recursion of the phase-space form holds along runs") {
    auto obj = quad_1_10();
    const double s = 1.0 / 40.0;
    const double r = std::sqrt(obj.mu() * s);
    const double sqrt_s = std::sqrt(s);
    for (double beta : {0.0, 0.5, 1.0}) {
        auto traj = run(family_config(beta, s, 200), obj, vec2(1.0, 1.0));
        for (size_t k = 1; k < traj.velocities.size(); ++k) {
            const Vec& x = traj.iterates[k];
            const Vec& xm = traj.iterates[k - 1];
            const Vec residual =
                traj.velocities[k] - traj.velocities[k - 1] +
                (2.0 * r / (1.0 - r)) * traj.velocities[k] +
                beta * sqrt_s * (obj.gradient(x) - obj.gradient(xm)) +
                ((1.0 + r) / (1.0 - r)) * sqrt_s * obj.gradient(x);
            CHECK(residual.norm() <= 1e-10);
        }
    }
}

TEST_CASE("config validation") {
    auto obj = unit_parabola();
    auto bad_beta = family_config(1.5, 0.1, 10);
    CHECK_THROWS_AS(run(bad_beta, obj, Vec::Ones(1)), ParameterDomainError);
    auto bad_step = family_config(0.5, -0.1, 10);
    CHECK_THROWS_AS(run(bad_step, obj, Vec::Ones(1)), ParameterDomainError);
    auto good = family_config(0.5, 0.1, 10);
    CHECK_THROWS_AS(run(good, obj, Vec::Ones(2)), DimensionError);
}
