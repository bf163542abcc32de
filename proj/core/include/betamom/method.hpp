#pragma once

#include <utility>
#include <vector>

#include "betamom/objective.hpp"
#include "betamom/types.hpp"

namespace betamom {

enum class Variant {
    single_variable,       // the beta family in one-sequence form (canonical path)
    two_sequence,          // the beta family in (y, y^beta) form, for cross-validation
    heavy_ball_reference,  // independently coded Polyak heavy ball, alpha = (1-r)/(1+r)
    nag_sc_reference,      // independently coded NAG-SC
    gradient_descent,
};

const char* variant_name(Variant v);

struct MethodConfig {
    double beta = 1.0;  // in [0, 1]; ignored by the reference variants
    double step = 0.0;  // s > 0
    int max_iter = 0;
    double grad_tol = 0.0;  // early stop on ||grad f(x_k)|| <= grad_tol; 0 disables
    Variant variant = Variant::single_variable;
};

/// Throws on beta outside [0,1], nonpositive step, nonpositive budget.
void validate(const MethodConfig& config, const Objective& obj);

// A run diverged: a non-finite coordinate appeared at iteration `iteration`.
struct DivergenceError : std::runtime_error {
    int iteration;
    explicit DivergenceError(int k)
        : std::runtime_error("non-finite iterate at k = " + std::to_string(k)),
          iteration(k) {}
};

/// Fully recorded run: iterates x_0..x_K, velocities v_k = (x_{k+1}-x_k)/sqrt(s)
/// for k < K, function gaps and gradient norms at every iterate.
struct Trajectory {
    std::vector<Vec> iterates;
    std::vector<Vec> velocities;
    std::vector<double> gaps;
    std::vector<double> grad_norms;
    MethodConfig config;

    int steps() const { return static_cast<int>(iterates.size()) - 1; }
};

/// Momentum coefficient (1 - sqrt(mu s)) / (1 + sqrt(mu s)).
double momentum_coefficient(double step, double mu);

/// Initial pair for the two-point recurrences:
/// x_1 = x_0 - 2 s grad f(x_0) / (1 + sqrt(mu s)).
std::pair<Vec, Vec> init_state(const MethodConfig& config, const Objective& obj,
                               const Vec& x0);

/// Companion initialization of the two-sequence form,
/// y_0^beta = x_0 - s grad f(x_0) [(1-r) beta + r - 1] / (1-r), r = sqrt(mu s).
Vec initial_y_beta(const MethodConfig& config, const Objective& obj, const Vec& x0);

/// One step of the single-variable family update:
/// x_{k+1} = x_k + alpha (x_k - x_{k-1}) - s grad f(x_k)
///           - beta alpha s (grad f(x_k) - grad f(x_{k-1})).
/// beta = 0 is exactly heavy ball, beta = 1 exactly NAG-SC.
Vec step_single_variable(const MethodConfig& config, const Objective& obj,
                         const Vec& x_prev, const Vec& x_curr);

/// One step of the two-sequence family update. Needs mu s < 1.
/// Returns (x_{k+1}, y^beta_{k+1}).
std::pair<Vec, Vec> step_two_sequence(const MethodConfig& config, const Objective& obj,
                                      const Vec& x_curr, const Vec& y_beta_curr);

/// Drives the configured variant for min(max_iter, early stop) steps.
/// Deterministic given inputs; throws DivergenceError on non-finite values.
Trajectory run(const MethodConfig& config, const Objective& obj, const Vec& x0);

}  // namespace betamom
