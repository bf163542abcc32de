#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace betamom {

using Vec = Eigen::VectorXd;

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when a formula leaves its domain of validity (e.g. mu*s >= 1,
// where 1 - sqrt(mu*s) appears in a denominator).
struct ParameterDomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Mismatched pieces passed to a cross-checking routine (e.g. an ODE solution
// tagged with a different (beta, s) than the check arguments).
struct ConfigurationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline void require_dimension(const Vec& v, Eigen::Index n, const char* what) {
    if (v.size() != n) {
        throw DimensionError(std::string(what) + ": expected dimension " +
                             std::to_string(n) + ", got " + std::to_string(v.size()));
    }
}

}  // namespace betamom
