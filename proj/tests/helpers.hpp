#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

#include "betamom/method.hpp"
#include "betamom/objective.hpp"

namespace betamom::testing {

inline Vec vec2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

inline Objective quad_1_10() { return make_quadratic({1.0, 10.0}, Vec::Zero(2)); }

inline Objective unit_parabola() { return make_quadratic({1.0}, Vec::Zero(1)); }

inline MethodConfig family_config(double beta, double s, int max_iter,
                                  Variant variant = Variant::single_variable) {
    MethodConfig config;
    config.beta = beta;
    config.step = s;
    config.max_iter = max_iter;
    config.variant = variant;
    return config;
}

// Least-squares slope of log(gap) over iterations [k0, k1]; returns the
// per-iteration contraction factor exp(-slope).
inline double fit_contraction(const Trajectory& traj, int k0, int k1) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int n = 0;
    for (int k = k0; k <= k1 && k < static_cast<int>(traj.gaps.size()); ++k) {
        const double g = traj.gaps[static_cast<size_t>(k)];
        if (!(g > 0.0) || !std::isfinite(g)) continue;
        const double x = static_cast<double>(k);
        const double y = std::log(g);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    const double denom = n * sxx - sx * sx;
    return std::exp(-(n * sxy - sx * sy) / denom);
}

// Small deterministic generator for test sampling, independent of the library's.
struct TestRng {
    std::uint64_t state;
    explicit TestRng(std::uint64_t seed) : state(seed ^ 0xabcdef1234567890ULL) {}
    double uniform() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return static_cast<double>(state >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    Vec vec_in_cube(int dim, double half_width) {
        Vec v(dim);
        for (int i = 0; i < dim; ++i) v[i] = uniform(-half_width, half_width);
        return v;
    }
};

}  // namespace betamom::testing
