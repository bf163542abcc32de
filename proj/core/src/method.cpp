#include "betamom/method.hpp"

#include <cmath>

namespace betamom {
namespace {

// The family stepper and the two reference steppers are written with the same
// association order on purpose: at beta = 0 the correction coefficient is an
// exact zero and the family update reproduces the heavy-ball arithmetic bit
// for bit; at beta = 1 the coefficient (1 * alpha) * s equals alpha * s
// exactly and the NAG-SC arithmetic is reproduced likewise.

Vec family_update(double beta, double alpha, double s, const Vec& x_prev,
                  const Vec& x_curr, const Vec& g_curr, const Vec& g_prev) {
    const double corr = (beta * alpha) * s;
    return x_curr + alpha * (x_curr - x_prev) - s * g_curr - corr * (g_curr - g_prev);
}

Vec heavy_ball_update(double alpha, double s, const Vec& x_prev, const Vec& x_curr,
                      const Vec& g_curr) {
    return x_curr + alpha * (x_curr - x_prev) - s * g_curr;
}

Vec nag_sc_update(double alpha, double s, const Vec& x_prev, const Vec& x_curr,
                  const Vec& g_curr, const Vec& g_prev) {
    const double corr = alpha * s;
    return x_curr + alpha * (x_curr - x_prev) - s * g_curr - corr * (g_curr - g_prev);
}

bool finite(const Vec& v) { return v.allFinite(); }

}  // namespace

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::single_variable: return "single_variable";
        case Variant::two_sequence: return "two_sequence";
        case Variant::heavy_ball_reference: return "heavy_ball_reference";
        case Variant::nag_sc_reference: return "nag_sc_reference";
        case Variant::gradient_descent: return "gradient_descent";
    }
    return "unknown";
}

void validate(const MethodConfig& config, const Objective& obj) {
    if (!(config.beta >= 0.0 && config.beta <= 1.0)) {
        throw ParameterDomainError("beta must lie in [0, 1]");
    }
    if (!(config.step > 0.0)) throw ParameterDomainError("step size must be positive");
    if (config.max_iter < 1) throw ParameterDomainError("max_iter must be >= 1");
    if (config.grad_tol < 0.0) throw ParameterDomainError("grad_tol must be >= 0");
    if (config.variant == Variant::two_sequence && obj.mu() * config.step >= 1.0) {
        throw ParameterDomainError("two-sequence form needs mu * s < 1");
    }
}

double momentum_coefficient(double step, double mu) {
    const double r = std::sqrt(mu * step);
    return (1.0 - r) / (1.0 + r);
}

std::pair<Vec, Vec> init_state(const MethodConfig& config, const Objective& obj,
                               const Vec& x0) {
    require_dimension(x0, obj.dimension(), "x0");
    const double s = config.step;
    const double r = std::sqrt(obj.mu() * s);
    const Vec g0 = obj.gradient(x0);
    Vec x1 = x0 - (2.0 * s / (1.0 + r)) * g0;
    return {x0, std::move(x1)};
}

Vec initial_y_beta(const MethodConfig& config, const Objective& obj, const Vec& x0) {
    require_dimension(x0, obj.dimension(), "x0");
    const double s = config.step;
    const double r = std::sqrt(obj.mu() * s);
    if (!(r < 1.0)) throw ParameterDomainError("two-sequence form needs mu * s < 1");
    const Vec g0 = obj.gradient(x0);
    const double coeff = ((1.0 - r) * config.beta + r - 1.0) / (1.0 - r);
    return x0 - (s * coeff) * g0;
}

Vec step_single_variable(const MethodConfig& config, const Objective& obj,
                         const Vec& x_prev, const Vec& x_curr) {
    require_dimension(x_prev, obj.dimension(), "x_prev");
    require_dimension(x_curr, obj.dimension(), "x_curr");
    const double s = config.step;
    const double alpha = momentum_coefficient(s, obj.mu());
    const Vec g_curr = obj.gradient(x_curr);
    switch (config.variant) {
        case Variant::heavy_ball_reference:
            return heavy_ball_update(alpha, s, x_prev, x_curr, g_curr);
        case Variant::nag_sc_reference:
            return nag_sc_update(alpha, s, x_prev, x_curr, g_curr, obj.gradient(x_prev));
        default:
            return family_update(config.beta, alpha, s, x_prev, x_curr, g_curr,
                                 obj.gradient(x_prev));
    }
}

std::pair<Vec, Vec> step_two_sequence(const MethodConfig& config, const Objective& obj,
                                      const Vec& x_curr, const Vec& y_beta_curr) {
    require_dimension(x_curr, obj.dimension(), "x_curr");
    require_dimension(y_beta_curr, obj.dimension(), "y_beta_curr");
    const double s = config.step;
    const double r = std::sqrt(obj.mu() * s);
    if (!(r < 1.0)) throw ParameterDomainError("two-sequence form needs mu * s < 1");
    const double alpha = (1.0 - r) / (1.0 + r);
    const Vec g = obj.gradient(x_curr);
    Vec y_next = x_curr - s * g;
    Vec y_beta_next = x_curr - (config.beta * s) * g;
    Vec x_next = y_next + alpha * (y_beta_next - y_beta_curr);
    return {std::move(x_next), std::move(y_beta_next)};
}

Trajectory run(const MethodConfig& config, const Objective& obj, const Vec& x0) {
    validate(config, obj);
    require_dimension(x0, obj.dimension(), "x0");

    const double s = config.step;
    const double sqrt_s = std::sqrt(s);
    const double alpha = momentum_coefficient(s, obj.mu());

    Trajectory out;
    out.config = config;
    out.iterates.reserve(static_cast<size_t>(config.max_iter) + 1);
    out.gaps.reserve(static_cast<size_t>(config.max_iter) + 1);
    out.grad_norms.reserve(static_cast<size_t>(config.max_iter) + 1);

    // Records x and its gradient; returns the gradient for reuse by the next
    // step's correction term. Throws on the first non-finite iterate.
    auto record = [&](const Vec& x) -> Vec {
        const int k = static_cast<int>(out.iterates.size());
        if (!finite(x)) throw DivergenceError(k);
        Vec g = obj.gradient(x);
        const double gap = obj.gap(x);
        const double gn = g.norm();
        if (!finite(g) || !std::isfinite(gap)) throw DivergenceError(k);
        out.iterates.push_back(x);
        out.gaps.push_back(gap);
        out.grad_norms.push_back(gn);
        return g;
    };
    auto done = [&](double grad_norm) {
        return config.grad_tol > 0.0 && grad_norm <= config.grad_tol;
    };

    Vec g_curr = record(x0);

    if (config.variant == Variant::gradient_descent) {
        Vec x = x0;
        for (int k = 0; k < config.max_iter && !done(out.grad_norms.back()); ++k) {
            x = x - s * g_curr;
            g_curr = record(x);
        }
    } else if (config.variant == Variant::two_sequence) {
        Vec x = x0;
        Vec y_beta = initial_y_beta(config, obj, x0);
        for (int k = 0; k < config.max_iter && !done(out.grad_norms.back()); ++k) {
            Vec y_next = x - s * g_curr;
            Vec y_beta_next = x - (config.beta * s) * g_curr;
            x = y_next + alpha * (y_beta_next - y_beta);
            y_beta = std::move(y_beta_next);
            g_curr = record(x);
        }
    } else {
        Vec x_prev = x0;
        Vec g_prev = g_curr;
        if (config.max_iter >= 1 && !done(out.grad_norms.back())) {
            auto [unused, x1] = init_state(config, obj, x0);
            Vec x_curr = std::move(x1);
            g_curr = record(x_curr);
            for (int k = 1; k < config.max_iter && !done(out.grad_norms.back()); ++k) {
                Vec x_next;
                switch (config.variant) {
                    case Variant::heavy_ball_reference:
                        x_next = heavy_ball_update(alpha, s, x_prev, x_curr, g_curr);
                        break;
                    case Variant::nag_sc_reference:
                        x_next = nag_sc_update(alpha, s, x_prev, x_curr, g_curr, g_prev);
                        break;
                    default:
                        x_next = family_update(config.beta, alpha, s, x_prev, x_curr,
                                               g_curr, g_prev);
                        break;
                }
                x_prev = std::move(x_curr);
                g_prev = std::move(g_curr);
                x_curr = std::move(x_next);
                g_curr = record(x_curr);
            }
        }
    }

    const auto n = out.iterates.size();
    out.velocities.reserve(n > 0 ? n - 1 : 0);
    for (size_t k = 0; k + 1 < n; ++k) {
        out.velocities.push_back((out.iterates[k + 1] - out.iterates[k]) / sqrt_s);
    }
    return out;
}

}  // namespace betamom
