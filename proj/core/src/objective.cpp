#include "betamom/objective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/SVD>

namespace betamom {
namespace {

// Deterministic uniform/gaussian draws decoupled from std::distributions, so
// stream contents are pinned by the seed alone.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

    std::uint64_t next_u64() {
        // splitmix64
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform_signed() { return 2.0 * uniform() - 1.0; }

    double gaussian() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    Vec gaussian_vec(Eigen::Index n) {
        Vec v(n);
        for (Eigen::Index i = 0; i < n; ++i) v[i] = gaussian();
        return v;
    }

    // Uniform draw from the ball of given radius around the center.
    Vec in_ball(const Vec& center, double radius) {
        Vec dir = gaussian_vec(center.size());
        const double norm = dir.norm();
        if (norm == 0.0) return center;
        const double u = uniform();
        const double scale =
            radius * std::pow(u, 1.0 / static_cast<double>(center.size()));
        return center + (scale / norm) * dir;
    }

private:
    std::uint64_t state_;
};

struct LseData {
    Eigen::MatrixXd a;  // rows a_i, prescaled so sigma_max(a) = 1
    Vec b;
    double mu;

    Vec softmax(const Vec& x) const {
        Vec z = a * x - b;
        const double zmax = z.maxCoeff();
        Vec p = (z.array() - zmax).exp();
        p /= p.sum();
        return p;
    }

    double value(const Vec& x) const {
        Vec z = a * x - b;
        const double zmax = z.maxCoeff();
        const double lse = zmax + std::log((z.array() - zmax).exp().sum());
        return lse + 0.5 * mu * x.squaredNorm();
    }

    Vec gradient(const Vec& x) const {
        return a.transpose() * softmax(x) + mu * x;
    }

    Vec hessian_vec(const Vec& x, const Vec& v) const {
        const Vec p = softmax(x);
        const Vec w = a * v;
        const Vec q = p.cwiseProduct(w) - p * p.dot(w);
        return a.transpose() * q + mu * v;
    }

    Eigen::MatrixXd hessian(const Vec& x) const {
        const Vec p = softmax(x);
        Eigen::MatrixXd scaled = p.asDiagonal() * a;
        return a.transpose() * scaled - (a.transpose() * p) * (p.transpose() * a) +
               mu * Eigen::MatrixXd::Identity(x.size(), x.size());
    }
};

}  // namespace

Objective::Objective(int dimension, ValueFn value, GradFn gradient, HvpFn hessian_vec,
                     double mu, double lip, std::optional<double> hess_lip,
                     Vec minimizer, double min_value)
    : dimension_(dimension),
      value_(std::move(value)),
      grad_(std::move(gradient)),
      hvp_(std::move(hessian_vec)),
      mu_(mu),
      lip_(lip),
      hess_lip_(hess_lip),
      minimizer_(std::move(minimizer)),
      min_value_(min_value) {
    if (dimension_ < 1) throw InvalidObjectiveError("dimension must be positive");
    if (!value_ || !grad_) throw InvalidObjectiveError("value and gradient oracles required");
    if (!(mu_ > 0.0)) throw InvalidObjectiveError("mu must be positive");
    if (!(lip_ >= mu_)) throw InvalidObjectiveError("lip must be at least mu");
    require_dimension(minimizer_, dimension_, "minimizer");
    const double grad_tol =
        std::max(1e-12, 1e-12 * lip_ * minimizer_.norm());
    if (grad_(minimizer_).norm() > grad_tol) {
        throw InvalidObjectiveError("gradient does not vanish at the declared minimizer");
    }
}

double Objective::value(const Vec& x) const {
    require_dimension(x, dimension_, "value argument");
    return value_(x);
}

Vec Objective::gradient(const Vec& x) const {
    require_dimension(x, dimension_, "gradient argument");
    return grad_(x);
}

Vec Objective::hessian_vec(const Vec& x, const Vec& v) const {
    if (!hvp_) throw MissingHessianError("objective has no Hessian-vector oracle");
    require_dimension(x, dimension_, "hessian_vec point");
    require_dimension(v, dimension_, "hessian_vec direction");
    return hvp_(x, v);
}

Objective make_quadratic(const std::vector<double>& eigenvalues, const Vec& x_star) {
    if (eigenvalues.empty()) throw InvalidObjectiveError("empty spectrum");
    for (double lambda : eigenvalues) {
        if (!(lambda > 0.0)) throw InvalidObjectiveError("nonpositive eigenvalue");
    }
    const auto n = static_cast<Eigen::Index>(eigenvalues.size());
    require_dimension(x_star, n, "x_star");

    Vec diag(n);
    for (Eigen::Index i = 0; i < n; ++i) diag[i] = eigenvalues[static_cast<size_t>(i)];

    const double mu = diag.minCoeff();
    const double lip = diag.maxCoeff();
    Vec center = x_star;

    auto value = [diag, center](const Vec& x) {
        return 0.5 * (diag.array() * (x - center).array().square()).sum();
    };
    auto grad = [diag, center](const Vec& x) -> Vec {
        return diag.cwiseProduct(x - center);
    };
    auto hvp = [diag](const Vec&, const Vec& v) -> Vec { return diag.cwiseProduct(v); };

    return Objective(static_cast<int>(n), value, grad, hvp, mu, lip, 0.0, center, 0.0);
}

Objective make_smooth_nonquadratic(int dimension, double mu, std::uint64_t seed) {
    if (dimension < 1) throw InvalidObjectiveError("dimension must be positive");
    if (!(mu > 0.0)) throw InvalidObjectiveError("mu must be positive");

    Rng rng(seed * 0x2545f4914f6cdd1dULL + 1);
    const int rows = std::max(6, 3 * dimension);

    auto data = std::make_shared<LseData>();
    data->mu = mu;
    data->a.resize(rows, dimension);
    data->b.resize(rows);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < dimension; ++j) data->a(i, j) = rng.gaussian();
        data->b[i] = rng.uniform_signed();
    }
    // sigma_max(a) = 1 makes the log-sum-exp part 1-smooth.
    const double sigma_max =
        Eigen::JacobiSVD<Eigen::MatrixXd>(data->a).singularValues()[0];
    data->a /= sigma_max;

    // Newton solve for the minimizer; the Hessian is at least mu I.
    Vec x = Vec::Zero(dimension);
    bool converged = false;
    for (int it = 0; it < 200; ++it) {
        const Vec g = data->gradient(x);
        if (g.norm() <= 1e-13) {
            converged = true;
            break;
        }
        x -= data->hessian(x).llt().solve(g);
    }
    if (!converged) {
        throw InvalidObjectiveError("minimizer solve did not reach tolerance");
    }

    auto value = [data](const Vec& p) { return data->value(p); };
    auto grad = [data](const Vec& p) -> Vec { return data->gradient(p); };
    auto hvp = [data](const Vec& p, const Vec& v) -> Vec { return data->hessian_vec(p, v); };

    const double min_value = data->value(x);
    return Objective(dimension, value, grad, hvp, mu, 1.0 + mu, std::nullopt, x,
                     min_value);
}

Objective add_fd_hessian(const Objective& obj) {
    if (obj.has_hessian()) return obj;
    auto grad = [obj](const Vec& x) -> Vec { return obj.gradient(x); };
    auto fd_hvp = [obj](const Vec& x, const Vec& v) -> Vec {
        const double eps = 1e-6 * (1.0 + x.norm()) / (1.0 + v.norm());
        return (obj.gradient(x + eps * v) - obj.gradient(x - eps * v)) / (2.0 * eps);
    };
    auto value = [obj](const Vec& x) { return obj.value(x); };
    return Objective(obj.dimension(), value, grad, fd_hvp, obj.mu(), obj.lip(),
                     obj.hess_lip(), obj.minimizer(), obj.min_value());
}

CertificationReport certify(const Objective& obj, int samples, double radius,
                            std::uint64_t rng_seed) {
    if (samples < 1) throw std::invalid_argument("certify: samples must be >= 1");
    if (!(radius > 0.0)) throw std::invalid_argument("certify: radius must be positive");

    Rng rng(rng_seed * 0x9e3779b97f4a7c15ULL + 7);
    const double mu = obj.mu();
    const double lip = obj.lip();
    const Vec& x_star = obj.minimizer();

    // Quadratics (constant Hessian, hess_lip == 0) get no analytic slack; the
    // smooth nonquadratic carries the documented 1e-12 relative slack. A small
    // roundoff floor keeps exact-identity margins from flipping sign in fp.
    const bool exact_hessian = obj.hess_lip().has_value() && *obj.hess_lip() == 0.0;
    const double analytic_slack = exact_hessian ? 0.0 : 1e-12;
    constexpr double eps = std::numeric_limits<double>::epsilon();

    CertificationReport report;
    report.samples = samples;
    double worst_sc = std::numeric_limits<double>::infinity();
    double worst_sm = std::numeric_limits<double>::infinity();

    for (int i = 0; i < samples; ++i) {
        const Vec x = rng.in_ball(x_star, radius);
        const Vec y = rng.in_ball(x_star, radius);
        const double fx = obj.value(x);
        const double fy = obj.value(y);
        const Vec gx = obj.gradient(x);
        const Vec gy = obj.gradient(y);
        const Vec d = y - x;
        const double dist = d.norm();

        const double scale = 1.0 + std::abs(fx) + std::abs(fy) + lip * d.squaredNorm();
        const double tol = analytic_slack * scale + 64.0 * eps * scale;

        const double sc_margin = fy - fx - gx.dot(d) - 0.5 * mu * d.squaredNorm();
        worst_sc = std::min(worst_sc, sc_margin);
        if (sc_margin < -tol) ++report.strong_convexity_violations;

        const double sm_margin = lip * dist - (gx - gy).norm();
        worst_sm = std::min(worst_sm, sm_margin);
        if (sm_margin < -tol * (1.0 + lip)) ++report.smoothness_violations;

        if (obj.hess_lip().has_value() && obj.has_hessian()) {
            Vec v = rng.gaussian_vec(x.size());
            const double vn = v.norm();
            if (vn > 0.0) {
                v /= vn;
                const double hl_margin =
                    *obj.hess_lip() * dist -
                    (obj.hessian_vec(x, v) - obj.hessian_vec(y, v)).norm();
                if (hl_margin < -tol * (1.0 + lip)) ++report.hessian_lipschitz_violations;
            }
        }

        const double gap_x = fx - obj.min_value();
        if (gx.squaredNorm() - 2.0 * lip * gap_x > tol * (1.0 + lip)) {
            ++report.gradient_gap_violations;
        }
        const double r2 = (x - x_star).squaredNorm();
        if (gap_x - 0.5 * lip * r2 > tol || gx.norm() - lip * std::sqrt(r2) > tol * (1.0 + lip)) {
            ++report.upper_growth_violations;
        }
    }

    report.worst_strong_convexity_margin = std::min(worst_sc, 0.0);
    report.worst_smoothness_margin = std::min(worst_sm, 0.0);
    return report;
}

}  // namespace betamom
