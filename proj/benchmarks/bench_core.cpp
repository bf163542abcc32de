#include <benchmark/benchmark.h>

#include <vector>

#include "betamom/energy.hpp"
#include "betamom/method.hpp"
#include "betamom/objective.hpp"
#include "betamom/ode.hpp"
#include "betamom/phase.hpp"

using namespace betamom;

namespace {

Objective quadratic_of_dim(int dim) {
    std::vector<double> spectrum(static_cast<size_t>(dim));
    for (int i = 0; i < dim; ++i) {
        spectrum[static_cast<size_t>(i)] = 1.0 + 9.0 * i / std::max(1, dim - 1);
    }
    return make_quadratic(spectrum, Vec::Zero(dim));
}

void BM_family_step(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    const auto obj = quadratic_of_dim(dim);
    MethodConfig config;
    config.beta = 0.5;
    config.step = 1.0 / 40.0;
    config.max_iter = 1;
    Vec x_prev = Vec::Ones(dim);
    Vec x_curr = 0.9 * Vec::Ones(dim);
    for (auto _ : state) {
        Vec next = step_single_variable(config, obj, x_prev, x_curr);
        benchmark::DoNotOptimize(next.data());
        x_prev.swap(x_curr);
        x_curr.swap(next);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_family_step)->Arg(2)->Arg(16)->Arg(128);

void BM_run_500(benchmark::State& state) {
    const auto obj = quadratic_of_dim(static_cast<int>(state.range(0)));
    MethodConfig config;
    config.beta = 1.0;
    config.step = 1.0 / 40.0;
    config.max_iter = 500;
    const Vec x0 = Vec::Ones(obj.dimension());
    for (auto _ : state) {
        auto traj = run(config, obj, x0);
        benchmark::DoNotOptimize(traj.gaps.back());
    }
}
BENCHMARK(BM_run_500)->Arg(2)->Arg(32);

void BM_rk4_high_resolution(benchmark::State& state) {
    const auto obj = quadratic_of_dim(static_cast<int>(state.range(0)));
    const double s = 1.0 / 40.0;
    const auto [h, n] = ode_grid_step(s, obj.lip());
    (void)n;
    const Vec x0 = Vec::Ones(obj.dimension());
    for (auto _ : state) {
        auto sol = integrate_hr(1.0, s, obj, x0, 1.0, h);
        benchmark::DoNotOptimize(sol.positions.back().data());
    }
}
BENCHMARK(BM_rk4_high_resolution)->Arg(2)->Arg(32);

void BM_discrete_energy(benchmark::State& state) {
    const auto obj = quadratic_of_dim(16);
    const Vec x = Vec::Ones(16);
    const Vec v = 0.1 * Vec::Ones(16);
    for (auto _ : state) {
        benchmark::DoNotOptimize(discrete_energy(0.5, 1.0 / 40.0, obj, x, v));
    }
}
BENCHMARK(BM_discrete_energy);

void BM_beta_critical_closed(benchmark::State& state) {
    for (auto _ : state) {
        auto result = beta_critical_closed(1.0 / 40.0, 1.0, 10.0);
        benchmark::DoNotOptimize(result.beta_c);
    }
}
BENCHMARK(BM_beta_critical_closed);

void BM_beta_critical_bisection(benchmark::State& state) {
    for (auto _ : state) {
        auto result = beta_critical_bisection(1.0 / 40.0, 1.0, 10.0, 1e-10);
        benchmark::DoNotOptimize(result.beta_c);
    }
}
BENCHMARK(BM_beta_critical_bisection);

}  // namespace

BENCHMARK_MAIN();
