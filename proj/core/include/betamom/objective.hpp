#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>

#include "betamom/types.hpp"

namespace betamom {

struct InvalidObjectiveError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Requested an oracle the objective does not provide (Hessian-vector products).
struct MissingHessianError : std::logic_error {
    using std::logic_error::logic_error;
};

/// A mu-strongly-convex, L-smooth objective with value/gradient oracles, an
/// optional Hessian-vector oracle, and a known minimizer. Immutable after
/// construction; all oracles are pure and safe to call concurrently.
class Objective {
public:
    using ValueFn = std::function<double(const Vec&)>;
    using GradFn = std::function<Vec(const Vec&)>;
    using HvpFn = std::function<Vec(const Vec&, const Vec&)>;

    Objective(int dimension, ValueFn value, GradFn gradient, HvpFn hessian_vec,
              double mu, double lip, std::optional<double> hess_lip, Vec minimizer,
              double min_value);

    int dimension() const { return dimension_; }
    double mu() const { return mu_; }
    double lip() const { return lip_; }
    std::optional<double> hess_lip() const { return hess_lip_; }
    const Vec& minimizer() const { return minimizer_; }
    double min_value() const { return min_value_; }
    bool has_hessian() const { return static_cast<bool>(hvp_); }

    double value(const Vec& x) const;
    Vec gradient(const Vec& x) const;
    /// Hessian-vector product (x, v) -> Hess f(x) * v. Throws MissingHessianError
    /// if the objective carries no Hessian oracle.
    Vec hessian_vec(const Vec& x, const Vec& v) const;

    double gap(const Vec& x) const { return value(x) - min_value_; }

private:
    int dimension_;
    ValueFn value_;
    GradFn grad_;
    HvpFn hvp_;  // may be empty
    double mu_;
    double lip_;
    std::optional<double> hess_lip_;
    Vec minimizer_;
    double min_value_;
};

/// f(x) = 1/2 (x - x*)^T D (x - x*) with D = diag(eigenvalues).
/// mu = min eigenvalue, lip = max eigenvalue, exact constant Hessian.
Objective make_quadratic(const std::vector<double>& eigenvalues, const Vec& x_star);

/// f(x) = log(sum_i exp(a_i^T x - b_i)) + mu/2 ||x||^2 with rows a_i drawn
/// deterministically from `seed` and rescaled so the log-sum-exp part has
/// gradient-Lipschitz constant <= 1 (lip = 1 + mu). The minimizer is located
/// at construction by a Newton solve down to gradient norm 1e-13.
Objective make_smooth_nonquadratic(int dimension, double mu, std::uint64_t seed);

/// Equip an objective lacking a Hessian oracle with a central-finite-difference
/// Hessian-vector product, eps = 1e-6 (1 + ||x||) / (1 + ||v||).
Objective add_fd_hessian(const Objective& obj);

struct CertificationReport {
    int samples = 0;
    int strong_convexity_violations = 0;
    int smoothness_violations = 0;
    int hessian_lipschitz_violations = 0;  // only checked when hess_lip is set
    int gradient_gap_violations = 0;       // ||grad f||^2 <= 2L (f - f*)
    int upper_growth_violations = 0;       // f - f* <= L/2 ||x-x*||^2 and ||grad f|| <= L ||x-x*||
    double worst_strong_convexity_margin = 0.0;  // most negative margin seen (0 if none)
    double worst_smoothness_margin = 0.0;

    bool clean() const {
        return strong_convexity_violations == 0 && smoothness_violations == 0 &&
               hessian_lipschitz_violations == 0 && gradient_gap_violations == 0 &&
               upper_growth_violations == 0;
    }
};

/// Samples pairs of points in a ball of `radius` around the minimizer and
/// counts violations of the class inequalities (strong convexity, L-smoothness,
/// Hessian Lipschitz continuity when declared). Deterministic in rng_seed.
CertificationReport certify(const Objective& obj, int samples, double radius,
                            std::uint64_t rng_seed);

}  // namespace betamom
