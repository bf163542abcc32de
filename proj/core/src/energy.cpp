#include "betamom/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "betamom/phase.hpp"

namespace betamom {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double beta_of(const Trajectory& traj) {
    switch (traj.config.variant) {
        case Variant::heavy_ball_reference: return 0.0;
        case Variant::nag_sc_reference: return 1.0;
        default: return traj.config.beta;
    }
}

}  // namespace

double continuous_energy(double beta, double s, const Objective& obj, const Vec& X,
                         const Vec& V) {
    const double r = std::sqrt(obj.mu() * s);
    const double sqrt_mu = std::sqrt(obj.mu());
    const Vec g = obj.gradient(X);
    const Vec mixed = V + 2.0 * sqrt_mu * (X - obj.minimizer()) + (beta * std::sqrt(s)) * g;
    return (1.0 + r) * obj.gap(X) + 0.25 * V.squaredNorm() + 0.25 * mixed.squaredNorm();
}

double continuous_decrement_delta(double beta, double s, const Objective& obj,
                                  const Vec& X, const Vec& V) {
    const double sqrt_mu = std::sqrt(obj.mu());
    const Vec g = obj.gradient(X);
    const double grad_term =
        (8.0 * beta * s * sqrt_mu - 3.0 * s * beta * beta * sqrt_mu) / 4.0 *
        g.squaredNorm();
    const double kinetic_term = 2.0 * sqrt_mu * V.squaredNorm();
    const double gap_term = (sqrt_mu + obj.mu() * std::sqrt(s)) * obj.gap(X);
    return 0.25 * (grad_term + kinetic_term + gap_term);
}

double discrete_energy(double beta, double s, const Objective& obj, const Vec& x_k,
                       const Vec& v_k) {
    const double r = std::sqrt(obj.mu() * s);
    if (!(r < 1.0)) throw ParameterDomainError("discrete energy needs mu * s < 1");
    const double sqrt_mu = std::sqrt(obj.mu());
    const Vec g = obj.gradient(x_k);
    const Vec mixed =
        v_k + (2.0 * sqrt_mu / (1.0 - r)) * (x_k - obj.minimizer()) + (beta * std::sqrt(s)) * g;
    return (1.0 + r) / (1.0 - r) * obj.gap(x_k) + 0.25 * v_k.squaredNorm() +
           0.25 * mixed.squaredNorm() - beta * s * g.squaredNorm() / (2.0 * (1.0 - r));
}

double energy_constant(double beta, double s, double mu, double lip) {
    const double r = std::sqrt(mu * s);
    if (!(r < 1.0)) throw ParameterDomainError("energy constant needs mu * s < 1");
    const double ls = lip * s;
    const double mixed = (2.0 - beta - beta * r) / (1.0 + r);
    return (1.0 + r) / (2.0 * (1.0 - r)) + ls / ((1.0 + r) * (1.0 + r)) +
           2.0 * (mu / lip) / ((1.0 - r) * (1.0 - r)) + 0.5 * ls * mixed * mixed;
}

EnergySeries check_continuous_decay(const OdeSolution& sol, double beta, double s,
                                    const Objective& obj) {
    if (!(sol.beta == beta) || !(sol.step_s == s)) {
        throw ConfigurationError("solution was integrated with different (beta, s)");
    }
    const int n = sol.grid_points();
    const double h = sol.integrator_step;
    const double decay = std::sqrt(obj.mu()) / 4.0;

    EnergySeries series;
    series.index = sol.times;
    series.values.resize(static_cast<size_t>(n));
    series.decrements.assign(static_cast<size_t>(n), kNaN);
    series.bound_rhs.assign(static_cast<size_t>(n), kNaN);
    for (int i = 0; i < n; ++i) {
        series.values[static_cast<size_t>(i)] = continuous_energy(
            beta, s, obj, sol.positions[static_cast<size_t>(i)],
            sol.velocities[static_cast<size_t>(i)]);
    }

    const auto& E = series.values;
    const double floor = 1e-12 * (1.0 + std::abs(E.empty() ? 0.0 : E.front()));
    for (int i = 1; i + 1 < n; ++i) {
        const auto u = static_cast<size_t>(i);
        const double dE = (E[u + 1] - E[u - 1]) / (2.0 * h);
        // Local third-derivative scale from the wider 5-point stencil; the
        // central-difference error of dE/dt is h^2/6 of it.
        double d3;
        if (i >= 2 && i + 2 < n) {
            d3 = (E[u + 2] - 2.0 * E[u + 1] + 2.0 * E[u - 1] - E[u - 2]) / (2.0 * h * h * h);
        } else {
            d3 = (E[u + 1] - 2.0 * E[u] + E[u - 1]) / (h * h * h);
        }
        const double tol_fd = 10.0 * h * h * std::abs(d3) + floor;
        series.decrements[u] = dE;
        series.bound_rhs[u] = -decay * E[u];
        if (dE > series.bound_rhs[u] + tol_fd) {
            series.violations.push_back(i);
        }
    }
    series.binding = true;  // the continuous decay bound has no step-size hypothesis
    return series;
}

EnergySeries check_discrete_decrement(const Trajectory& traj, double beta, double s,
                                      const Objective& obj) {
    if (traj.config.variant == Variant::gradient_descent) {
        throw ConfigurationError("energy decrement applies to the momentum family only");
    }
    if (traj.config.step != s || beta_of(traj) != beta) {
        throw ConfigurationError("trajectory was produced with different (beta, s)");
    }
    const double mu = obj.mu();
    const double lip = obj.lip();
    const double r = std::sqrt(mu * s);
    if (!(r < 1.0)) throw ParameterDomainError("discrete energy needs mu * s < 1");

    const auto ab = coefficients_AB(beta, s, mu, lip);
    const double rate = r * std::min(1.0 / 6.0, ab.ratio());

    const auto n_vel = traj.velocities.size();
    EnergySeries series;
    series.binding = s <= 1.0 / (4.0 * lip) * (1.0 + 1e-12);
    series.inner_product_binding = s <= 1.0 / lip * (1.0 + 1e-12);
    series.gap_form_binding = s <= 1.0 / (2.0 * lip) * (1.0 + 1e-12);
    series.index.resize(n_vel);
    series.values.resize(n_vel);
    series.decrements.assign(n_vel, kNaN);
    series.bound_rhs.assign(n_vel, kNaN);

    std::vector<Vec> grads;
    grads.reserve(n_vel);
    for (size_t k = 0; k < n_vel; ++k) {
        series.index[k] = static_cast<double>(k);
        series.values[k] =
            discrete_energy(beta, s, obj, traj.iterates[k], traj.velocities[k]);
        grads.push_back(obj.gradient(traj.iterates[k]));
    }

    for (size_t k = 0; k + 1 < n_vel; ++k) {
        const double e_next = series.values[k + 1];
        const double dE = e_next - series.values[k];
        const double rhs = -rate * e_next;
        const double tol = 1e-12 * (1.0 + std::abs(e_next));
        series.decrements[k] = dE;
        series.bound_rhs[k] = rhs;
        if (dE > rhs + tol) series.violations.push_back(static_cast<int>(k));

        const Vec& x1 = traj.iterates[k + 1];
        const Vec& v1 = traj.velocities[k + 1];
        const Vec& g1 = grads[k + 1];
        const double gap1 = traj.gaps[k + 1];
        const double gn1_sq = g1.squaredNorm();

        // Weaker estimate valid under s <= 1/L.
        const double rhs_inner_product =
            -(r / (1.0 - r)) *
                ((1.0 + r) / (1.0 - r) * g1.dot(x1 - obj.minimizer()) + v1.squaredNorm()) +
            0.5 * ((1.0 + r) / (1.0 - r)) * s * ((1.0 + beta) * r + (1.0 - beta)) /
                (1.0 - r) * gn1_sq;
        if (dE > rhs_inner_product + tol) ++series.inner_product_violations;

        // Sharper estimate valid under s <= 1/(2L).
        const double one_minus_r2 = (1.0 - r) * (1.0 - r);
        const double a_term =
            1.0 / one_minus_r2 *
            (1.0 - 2.0 * lip * s *
                       ((beta - beta * beta) * mu * s + (3.0 + beta * beta - 2.0 * beta) * r +
                        2.0 - 2.0 * beta) /
                       (2.0 * r)) *
            gap1;
        const double grad_coeff =
            (beta * beta * s * r - (beta * beta - beta) * s) / (2.0 * r);
        const double mid_term = r / one_minus_r2 * (gap1 - grad_coeff * gn1_sq);
        const double tail_term =
            mu / (2.0 * one_minus_r2) * (x1 - obj.minimizer()).squaredNorm() +
            1.0 / (1.0 - r) * v1.squaredNorm();
        const double rhs_gap_form = -r * (a_term + mid_term + tail_term);
        if (dE > rhs_gap_form + tol) ++series.gap_form_violations;
    }
    return series;
}

}  // namespace betamom
