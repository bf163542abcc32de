#include "betamom/ode.hpp"

#include <cmath>
#include <limits>

namespace betamom {

std::pair<Vec, Vec> hr_rhs(double beta, double s, const Objective& obj, const Vec& X,
                           const Vec& V) {
    require_dimension(X, obj.dimension(), "X");
    require_dimension(V, obj.dimension(), "V");
    if (beta > 0.0 && !obj.has_hessian()) {
        throw MissingHessianError(
            "beta > 0 needs a Hessian-vector oracle (see add_fd_hessian)");
    }
    const double sqrt_mu = std::sqrt(obj.mu());
    const double damping = 1.0 + std::sqrt(obj.mu() * s);
    Vec dV = -2.0 * sqrt_mu * V - damping * obj.gradient(X);
    if (beta > 0.0) {
        dV -= (beta * std::sqrt(s)) * obj.hessian_vec(X, V);
    }
    return {V, std::move(dV)};
}

std::pair<Vec, Vec> lr_rhs(const Objective& obj, const Vec& X, const Vec& V) {
    require_dimension(X, obj.dimension(), "X");
    require_dimension(V, obj.dimension(), "V");
    Vec dV = -2.0 * std::sqrt(obj.mu()) * V - obj.gradient(X);
    return {V, std::move(dV)};
}

VectorField make_hr_field(double beta, double s, const Objective& obj) {
    if (beta > 0.0 && !obj.has_hessian()) {
        throw MissingHessianError(
            "beta > 0 needs a Hessian-vector oracle (see add_fd_hessian)");
    }
    return [beta, s, obj](const Vec& X, const Vec& V) { return hr_rhs(beta, s, obj, X, V); };
}

VectorField make_lr_field(const Objective& obj) {
    return [obj](const Vec& X, const Vec& V) { return lr_rhs(obj, X, V); };
}

Vec initial_velocity(double s, const Objective& obj, const Vec& x0) {
    require_dimension(x0, obj.dimension(), "x0");
    const double r = std::sqrt(obj.mu() * s);
    return -(2.0 * std::sqrt(s) / (1.0 + r)) * obj.gradient(x0);
}

OdeSolution integrate_steps(const VectorField& rhs, const Vec& x0, const Vec& v0,
                            int n_steps, double h) {
    if (!(h > 0.0)) throw ParameterDomainError("integrator step must be positive");
    if (n_steps < 1) throw ParameterDomainError("need at least one integration step");

    OdeSolution sol;
    sol.integrator_step = h;
    sol.beta = std::numeric_limits<double>::quiet_NaN();
    sol.step_s = std::numeric_limits<double>::quiet_NaN();
    sol.times.reserve(static_cast<size_t>(n_steps) + 1);
    sol.positions.reserve(static_cast<size_t>(n_steps) + 1);
    sol.velocities.reserve(static_cast<size_t>(n_steps) + 1);

    Vec X = x0;
    Vec V = v0;
    sol.times.push_back(0.0);
    sol.positions.push_back(X);
    sol.velocities.push_back(V);

    const double half = 0.5 * h;
    for (int i = 1; i <= n_steps; ++i) {
        const auto [k1x, k1v] = rhs(X, V);
        const auto [k2x, k2v] = rhs(X + half * k1x, V + half * k1v);
        const auto [k3x, k3v] = rhs(X + half * k2x, V + half * k2v);
        const auto [k4x, k4v] = rhs(X + h * k3x, V + h * k3v);
        X += (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        V += (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        const double t = static_cast<double>(i) * h;
        if (!X.allFinite() || !V.allFinite()) throw IntegrationBlowupError(t);
        sol.times.push_back(t);
        sol.positions.push_back(X);
        sol.velocities.push_back(V);
    }
    return sol;
}

OdeSolution integrate(const VectorField& rhs, const Vec& x0, const Vec& v0,
                      double t_end, double h) {
    if (!(h > 0.0)) throw ParameterDomainError("integrator step must be positive");
    if (!(t_end >= h)) throw ParameterDomainError("t_end must cover at least one step");
    const int n = static_cast<int>(std::ceil(t_end / h - 1e-12));
    return integrate_steps(rhs, x0, v0, n, h);
}

OdeSolution integrate_hr(double beta, double s, const Objective& obj, const Vec& x0,
                         double t_end, double h) {
    OdeSolution sol = integrate(make_hr_field(beta, s, obj), x0,
                                initial_velocity(s, obj, x0), t_end, h);
    sol.beta = beta;
    sol.step_s = s;
    return sol;
}

OdeSolution integrate_lr(double s, const Objective& obj, const Vec& x0, double t_end,
                         double h) {
    OdeSolution sol = integrate(make_lr_field(obj), x0, initial_velocity(s, obj, x0),
                                t_end, h);
    sol.step_s = s;
    return sol;
}

std::pair<double, int> ode_grid_step(double s, double lip) {
    if (!(s > 0.0) || !(lip > 0.0)) throw ParameterDomainError("s and L must be positive");
    const double sqrt_s = std::sqrt(s);
    const double h0 = std::min(sqrt_s, 1.0 / std::sqrt(lip)) / 50.0;
    const int n = static_cast<int>(std::ceil(sqrt_s / h0 - 1e-12));
    return {sqrt_s / static_cast<double>(n), n};
}

double deviation(const Trajectory& traj, const OdeSolution& sol, double T) {
    const double sqrt_s = std::sqrt(traj.config.step);
    const double h = sol.integrator_step;
    const auto n = static_cast<long>(std::llround(sqrt_s / h));
    if (n < 1 || std::abs(static_cast<double>(n) * h / sqrt_s - 1.0) > 1e-9) {
        throw ConfigurationError("solution grid does not subdivide sqrt(s) evenly");
    }
    const auto k_max = static_cast<long>(std::floor(T / sqrt_s + 1e-9));
    if (k_max > traj.steps()) throw SpanError("T exceeds the trajectory span");
    if (k_max * n >= sol.grid_points()) throw SpanError("T exceeds the ODE solution span");

    double worst = 0.0;
    for (long k = 0; k <= k_max; ++k) {
        const double d =
            (traj.iterates[static_cast<size_t>(k)] - sol.positions[static_cast<size_t>(k * n)])
                .norm();
        worst = std::max(worst, d);
    }
    return worst;
}

BoundReport continuous_rate_check(const OdeSolution& sol, const Objective& obj,
                                  double beta, double s) {
    BoundReport report;
    report.bound_constant = 0.5 * (3.0 + (2.0 - beta) * (2.0 - beta));
    report.hypothesis_satisfied = s <= 1.0 / obj.lip() * (1.0 + 1e-12);

    const double r2 = (sol.positions.front() - obj.minimizer()).squaredNorm();
    const double prefactor = report.bound_constant / s * r2;
    const double decay = std::sqrt(obj.mu()) / 4.0;
    const double atol =
        64.0 * std::numeric_limits<double>::epsilon() *
        (1.0 + std::abs(obj.value(sol.positions.front())) + std::abs(obj.min_value()));

    double max_ratio = 0.0;
    double worst_time = 0.0;
    for (int i = 0; i < sol.grid_points(); ++i) {
        const double gap = obj.gap(sol.positions[static_cast<size_t>(i)]);
        const double bound = prefactor * std::exp(-decay * sol.times[static_cast<size_t>(i)]);
        double ratio;
        if (bound > 0.0) {
            ratio = gap / bound;
        } else {
            ratio = gap <= atol ? 0.0 : std::numeric_limits<double>::infinity();
        }
        if (ratio > max_ratio) {
            max_ratio = ratio;
            worst_time = sol.times[static_cast<size_t>(i)];
        }
    }
    report.max_ratio = max_ratio;
    report.worst_time = worst_time;
    report.pass = max_ratio <= 1.0 + 1e-9;
    return report;
}

}  // namespace betamom
