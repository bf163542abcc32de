#pragma once

#include <vector>

#include "betamom/method.hpp"
#include "betamom/objective.hpp"
#include "betamom/ode.hpp"
#include "betamom/types.hpp"

namespace betamom {

/// Continuous energy functional along the high-resolution dynamic:
/// E = (1 + sqrt(mu s)) (f(X)-f*) + 1/4 ||V||^2
///     + 1/4 ||V + 2 sqrt(mu) (X-x*) + beta sqrt(s) grad f(X)||^2.
double continuous_energy(double beta, double s, const Objective& obj, const Vec& X,
                         const Vec& V);

/// The nonnegative dissipation slack Delta_beta in
/// dE/dt <= -(sqrt(mu)/4) E - Delta_beta:
/// 1/4 [ (8 beta s sqrt(mu) - 3 s beta^2 sqrt(mu))/4 ||grad f(X)||^2
///       + 2 sqrt(mu) ||V||^2 + (sqrt(mu) + mu sqrt(s)) (f(X)-f*) ].
double continuous_decrement_delta(double beta, double s, const Objective& obj,
                                  const Vec& X, const Vec& V);

/// Discrete energy functional on the phase-space sequence (x_k, v_k).
/// Needs mu s < 1. May be negative for beta > 0 (carries a negative term).
double discrete_energy(double beta, double s, const Objective& obj, const Vec& x_k,
                       const Vec& v_k);

/// Bound on the initial energy: E(0) <= energy_constant * L * ||x0 - x*||^2
/// when the run starts from the standard initial velocity.
double energy_constant(double beta, double s, double mu, double lip);

struct EnergySeries {
    std::vector<double> index;       // time t or iteration k
    std::vector<double> values;      // E at each index
    std::vector<double> decrements;  // central dE/dt estimate, or E(k+1) - E(k)
    std::vector<double> bound_rhs;   // right-hand side the decrement is checked against
    std::vector<int> violations;     // indices where decrement > bound_rhs + tolerance
    bool binding = true;             // step-size hypothesis satisfied

    // Diagnostic tallies for two intermediate per-step estimates (recorded,
    // not asserted; their hypotheses are s <= 1/L and s <= 1/(2L)).
    int inner_product_violations = 0;
    int gap_form_violations = 0;
    bool inner_product_binding = false;
    bool gap_form_binding = false;

    int violation_count() const { return static_cast<int>(violations.size()); }
};

/// Verifies dE/dt <= -(sqrt(mu)/4) E along an integrated solution, with dE/dt
/// estimated by central differences and a tolerance scaled by the local third
/// derivative of E. Throws ConfigurationError if (beta, s) mismatch the solution.
EnergySeries check_continuous_decay(const OdeSolution& sol, double beta, double s,
                                    const Objective& obj);

/// Verifies E(k+1) - E(k) <= -sqrt(mu s) min{1/6, A_beta/B_beta} E(k+1) along a
/// trajectory (hypothesis s <= 1/(4L); out-of-hypothesis runs are evaluated but
/// flagged non-binding). Velocities are the exact stored v_k. Two intermediate
/// per-step estimates are tallied for diagnostics, never asserted.
EnergySeries check_discrete_decrement(const Trajectory& traj, double beta, double s,
                                      const Objective& obj);

}  // namespace betamom
