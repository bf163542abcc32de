#pragma once

#include <optional>
#include <string>

#include "betamom/types.hpp"

namespace betamom {

struct NoRealRootError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Admissible step-size range of the phase-transition analysis:
/// s in [25 mu / (12L - mu)^2, 1/(4L)], equivalently s = 1/(cL) with
/// c in [4, (12L - mu)^2 / (25 mu L)].
struct StepWindow {
    double s_min = 0.0;
    double s_max = 0.0;
    double c_min = 0.0;
    double c_max = 0.0;
    bool empty() const { return s_min > s_max; }
    bool contains(double s) const { return !empty() && s_min <= s && s <= s_max; }
};

StepWindow step_window(double mu, double lip);

struct ABCoefficients {
    double A = 0.0;
    double B = 0.0;
    double ratio() const { return A / B; }
};

/// The decrement coefficients of the recursive energy inequality. Evaluated in
/// the (sqrt(mu s), L s) parameterization. Needs mu s < 1.
ABCoefficients coefficients_AB(double beta, double s, double mu, double lip);

/// Quadratic polynomial with sign(h(beta)) = sign(A_beta/B_beta - 1/6).
double h_poly(double beta, double s, double mu, double lip);

/// d h / d beta, monotone decreasing in beta; nonnegative on [0,1] in-window.
double h_poly_derivative(double beta, double s, double mu, double lip);

/// Coefficients of h written as a b^2 + b beta + c (closed-form root input).
struct CriticalCoefficients {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};
CriticalCoefficients beta_critical_coefficients(double s, double mu, double lip);

struct CriticalBetaResult {
    std::optional<double> beta_c;  // the root of h in [0,1], when one exists
    double root_low = 0.0;         // both real roots of the quadratic (closed form
    double root_high = 0.0;        //   only; equal to beta_c bracket for bisection)
    bool uniform_supercritical = false;  // h(0) > 0: ratio > 1/6 on all of [0,1]
    bool uniform_subcritical = false;    // h(1) < 0: ratio <= 1/6 on all of [0,1]
    bool in_window = false;              // s inside the admissible window
};

/// Closed-form critical beta from the quadratic coefficients. Selects the root
/// lying in [0,1]; both roots are reported. Throws NoRealRootError when the
/// discriminant is negative. No root in [0,1] yields a uniform-regime result.
CriticalBetaResult beta_critical_closed(double s, double mu, double lip);

/// Independent bisection oracle on h over [0,1]; interval width <= tol.
/// No sign change yields a uniform-regime result.
CriticalBetaResult beta_critical_bisection(double s, double mu, double lip, double tol);

enum class Regime { subcritical, supercritical, boundary };

const char* regime_name(Regime r);

/// Classification by the ratio A/B against 1/6 with a 1e-12 knife-edge band.
Regime classify_regime(double ratio);

struct RateBound {
    Regime regime = Regime::subcritical;
    double rate_factor = 1.0;  // per-iteration contraction denominator
    /// At the boundary both regimes' factors are reported; unset otherwise.
    std::optional<double> rate_factor_alt;
    double constant = 0.0;     // C' L ||x0 - x*||^2
    double value = 0.0;        // constant / rate_factor^k
    bool in_window = true;     // advisory when s lies outside the window
};

/// Evaluates the guaranteed bound on f(x_k) - f* for the regime selected by
/// the ratio test. The subcritical denominator is evaluated through the
/// expanded rational function in (sqrt(mu/L), c); it equals
/// 1 + sqrt(mu s) A_beta/B_beta, which the test suite cross-checks.
RateBound rate_bound(double beta, double s, double mu, double lip, int k, double r2);

/// Constant of the initial-energy bound times the gap-recovery factor,
/// C' = (c + c sqrt(mu/(cL)) - beta) / (c (1 - sqrt(mu/(cL)))) * C.
double rate_constant(double beta, double s, double mu, double lip);

struct PhaseReport {
    double mu = 0.0;
    double lip = 0.0;
    double step = 0.0;
    StepWindow window;
    double A = 0.0;
    double B = 0.0;
    double ratio = 0.0;
    double h_value = 0.0;
    std::optional<double> beta_c_closed;
    std::optional<double> beta_c_bisect;
    Regime regime = Regime::subcritical;
    double rate_factor = 1.0;
    bool in_window = false;
};

/// Assembles the full per-(beta, s) classification used by sweeps.
PhaseReport phase_report(double beta, double s, double mu, double lip);

}  // namespace betamom
