#include "betamom/phase.hpp"

#include <algorithm>
#include <cmath>

#include "betamom/energy.hpp"

namespace betamom {
namespace {

constexpr double kSixth = 1.0 / 6.0;
constexpr double kBoundaryBand = 1e-12;

void check_parameters(double s, double mu, double lip) {
    if (!(mu > 0.0) || !(lip >= mu)) {
        throw ParameterDomainError("need 0 < mu <= L");
    }
    if (!(s > 0.0)) throw ParameterDomainError("step size must be positive");
    if (!(mu * s < 1.0)) throw ParameterDomainError("need mu * s < 1");
}

// All polynomial evaluations run in the (r, ls) = (sqrt(mu s), L s)
// parameterization; every expression below is polynomial in these two.
struct Params {
    double r;
    double ls;
};

Params params_of(double s, double mu, double lip) {
    return {std::sqrt(mu * s), lip * s};
}

double h_value(double beta, Params p) {
    const double r = p.r;
    const double ls = p.ls;
    const double quad = (ls * r * r - ls * r) * beta * beta;
    const double lin = (2.0 * ls * r - ls * r * r + 2.0 * ls) * beta;
    const double constant = r - 3.0 * ls * r - 2.0 * ls;
    const double denom_part =
        0.5 * ls * r * (1.0 - r) * (1.0 - r) * beta * beta + r - r * r;
    return quad + lin + constant - kSixth * denom_part;
}

}  // namespace

StepWindow step_window(double mu, double lip) {
    if (!(mu > 0.0)) throw ParameterDomainError("mu must be positive");
    if (!(mu <= lip)) throw ParameterDomainError("mu must not exceed L");
    StepWindow w;
    const double spread = 12.0 * lip - mu;
    w.s_min = 25.0 * mu / (spread * spread);
    w.s_max = 1.0 / (4.0 * lip);
    w.c_min = 4.0;
    w.c_max = spread * spread / (25.0 * mu * lip);
    return w;
}

ABCoefficients coefficients_AB(double beta, double s, double mu, double lip) {
    check_parameters(s, mu, lip);
    const auto [r, ls] = params_of(s, mu, lip);
    const double numer = (beta - beta * beta) * r * r +
                         (3.0 + beta * beta - 2.0 * beta) * r + 2.0 - 2.0 * beta;
    ABCoefficients ab;
    ab.A = (1.0 - ls * numer / r) / ((1.0 - r) * (1.0 - r));
    ab.B = 1.0 / (1.0 - r) + 0.5 * beta * beta * ls;
    return ab;
}

double h_poly(double beta, double s, double mu, double lip) {
    check_parameters(s, mu, lip);
    return h_value(beta, params_of(s, mu, lip));
}

double h_poly_derivative(double beta, double s, double mu, double lip) {
    check_parameters(s, mu, lip);
    const auto [r, ls] = params_of(s, mu, lip);
    return ls * r * (2.0 * (r - 1.0) - kSixth * (1.0 - r) * (1.0 - r)) * beta +
           2.0 * ls * r - ls * r * r + 2.0 * ls;
}

CriticalCoefficients beta_critical_coefficients(double s, double mu, double lip) {
    check_parameters(s, mu, lip);
    const auto [r, ls] = params_of(s, mu, lip);
    CriticalCoefficients q;
    q.a = ls * r * (r - 1.0) * (1.0 - (r - 1.0) / 12.0);
    q.b = ls * (2.0 * r - r * r + 2.0);
    q.c = (5.0 / 6.0) * r - 3.0 * ls * r - 2.0 * ls + kSixth * r * r;
    return q;
}

CriticalBetaResult beta_critical_closed(double s, double mu, double lip) {
    const auto [a, b, c] = beta_critical_coefficients(s, mu, lip);
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) throw NoRealRootError("h has no real root");

    CriticalBetaResult result;
    result.in_window = step_window(mu, lip).contains(s);
    if (a == 0.0) {
        const double root = -c / b;
        result.root_low = result.root_high = root;
    } else {
        // The quotient form avoids cancellation in the smaller-magnitude root.
        const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
        const double r1 = q / a;
        const double r2 = c / q;
        result.root_low = std::min(r1, r2);
        result.root_high = std::max(r1, r2);
    }

    const auto in_unit = [](double x) { return x >= -1e-12 && x <= 1.0 + 1e-12; };
    if (in_unit(result.root_low)) {
        result.beta_c = std::clamp(result.root_low, 0.0, 1.0);
    } else if (in_unit(result.root_high)) {
        result.beta_c = std::clamp(result.root_high, 0.0, 1.0);
    } else {
        const auto p = params_of(s, mu, lip);
        result.uniform_supercritical = h_value(0.0, p) > 0.0;
        result.uniform_subcritical = h_value(1.0, p) < 0.0;
    }
    return result;
}

CriticalBetaResult beta_critical_bisection(double s, double mu, double lip, double tol) {
    check_parameters(s, mu, lip);
    if (!(tol > 0.0)) throw ParameterDomainError("bisection tolerance must be positive");
    const auto p = params_of(s, mu, lip);

    CriticalBetaResult result;
    result.in_window = step_window(mu, lip).contains(s);

    double lo = 0.0;
    double hi = 1.0;
    double h_lo = h_value(lo, p);
    double h_hi = h_value(hi, p);
    if (h_lo > 0.0 && h_hi >= 0.0) {
        result.uniform_supercritical = true;
        return result;
    }
    if (h_hi < 0.0 && h_lo <= 0.0) {
        result.uniform_subcritical = true;
        return result;
    }
    // h_lo <= 0 <= h_hi (the in-window case; h is nondecreasing there), or the
    // reversed out-of-window bracket. Bisect on the sign change either way.
    const bool ascending = h_lo <= 0.0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double h_mid = h_value(mid, p);
        const bool left = ascending ? (h_mid < 0.0) : (h_mid > 0.0);
        if (left) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    result.root_low = lo;
    result.root_high = hi;
    result.beta_c = 0.5 * (lo + hi);
    return result;
}

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::subcritical: return "subcritical";
        case Regime::supercritical: return "supercritical";
        case Regime::boundary: return "boundary";
    }
    return "unknown";
}

Regime classify_regime(double ratio) {
    const double excess = ratio - kSixth;
    if (std::abs(excess) <= kBoundaryBand) return Regime::boundary;
    return excess > 0.0 ? Regime::supercritical : Regime::subcritical;
}

namespace {

double supercritical_factor(double q, double c) {
    return 1.0 + q / (6.0 * std::sqrt(c));
}

// Expanded rational function of the subcritical per-iteration denominator, in
// q = sqrt(mu/L) and c = 1/(Ls). Multiplied by sqrt(mu s) = q/sqrt(c) it is
// exactly sqrt(mu s) A_beta / B_beta, which the tests cross-check against the
// direct A, B evaluation.
double subcritical_factor(double beta, double q, double c) {
    const double rc = std::sqrt(c);
    const double b2 = beta * beta;
    const double numer = (b2 - beta) / (c * c) * q * q +
                         (1.0 / rc - (3.0 + b2 - 2.0 * beta) / (c * rc)) * q -
                         (2.0 - 2.0 * beta) / c;
    const double denom = b2 / (2.0 * c * c * rc) * q * q * q -
                         (1.0 / c + b2 / (c * c)) * q * q +
                         (1.0 / rc + b2 / (2.0 * c * rc)) * q;
    return 1.0 + (q / rc) * (numer / denom);
}

}  // namespace

double rate_constant(double beta, double s, double mu, double lip) {
    const double r = std::sqrt(mu * s);
    if (!(r < 1.0)) throw ParameterDomainError("rate constant needs mu * s < 1");
    const double ls = lip * s;
    const double gap_recovery = (1.0 + r - beta * ls) / (1.0 - r);
    return gap_recovery * energy_constant(beta, s, mu, lip);
}

RateBound rate_bound(double beta, double s, double mu, double lip, int k, double r2) {
    if (k < 0) throw ParameterDomainError("iteration count must be nonnegative");
    const auto ab = coefficients_AB(beta, s, mu, lip);

    const double q = std::sqrt(mu / lip);
    const double c = 1.0 / (lip * s);

    RateBound bound;
    bound.regime = classify_regime(ab.ratio());
    bound.in_window = step_window(mu, lip).contains(s);
    switch (bound.regime) {
        case Regime::supercritical:
            bound.rate_factor = supercritical_factor(q, c);
            break;
        case Regime::subcritical:
            bound.rate_factor = subcritical_factor(beta, q, c);
            break;
        case Regime::boundary:
            bound.rate_factor = supercritical_factor(q, c);
            bound.rate_factor_alt = subcritical_factor(beta, q, c);
            break;
    }
    bound.constant = rate_constant(beta, s, mu, lip) * lip * r2;
    bound.value = bound.constant / std::pow(bound.rate_factor, static_cast<double>(k));
    return bound;
}

PhaseReport phase_report(double beta, double s, double mu, double lip) {
    PhaseReport report;
    report.mu = mu;
    report.lip = lip;
    report.step = s;
    report.window = step_window(mu, lip);
    report.in_window = report.window.contains(s);

    const auto ab = coefficients_AB(beta, s, mu, lip);
    report.A = ab.A;
    report.B = ab.B;
    report.ratio = ab.ratio();
    report.h_value = h_poly(beta, s, mu, lip);
    report.regime = classify_regime(report.ratio);

    try {
        report.beta_c_closed = beta_critical_closed(s, mu, lip).beta_c;
    } catch (const NoRealRootError&) {
        report.beta_c_closed = std::nullopt;
    }
    report.beta_c_bisect = beta_critical_bisection(s, mu, lip, 1e-10).beta_c;
    report.rate_factor = rate_bound(beta, s, mu, lip, 0, 1.0).rate_factor;
    return report;
}

}  // namespace betamom
