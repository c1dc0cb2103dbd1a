#include <benchmark/benchmark.h>

#include <random>

#include "hypstab/boundary.hpp"
#include "hypstab/matrix.hpp"
#include "hypstab/models.hpp"
#include "hypstab/riemann.hpp"
#include "hypstab/simulate.hpp"
#include "hypstab/stability.hpp"

namespace {

hypstab::Matrix test_matrix(int n) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    hypstab::Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            const double x = u(rng);
            m(i, j) = x; // symmetric: real spectrum for the eigensolver
            m(j, i) = x;
        }
    for (int i = 0; i < n; ++i) m(i, i) += n; // well conditioned
    return m;
}

void bm_invert(benchmark::State& state) {
    const hypstab::Matrix m = test_matrix(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(hypstab::invert(m));
}
BENCHMARK(bm_invert)->Arg(2)->Arg(4)->Arg(6);

void bm_eig_real(benchmark::State& state) {
    const hypstab::Matrix m = test_matrix(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(hypstab::eig_real(m));
}
BENCHMARK(bm_eig_real)->Arg(2)->Arg(4)->Arg(6);

void bm_operator_norm(benchmark::State& state) {
    const hypstab::Matrix m = test_matrix(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(hypstab::operator_norm_2(m));
}
BENCHMARK(bm_operator_norm)->Arg(2)->Arg(4)->Arg(6);

void bm_spectral_radius(benchmark::State& state) {
    const hypstab::CMatrix m = hypstab::to_complex(test_matrix(static_cast<int>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(hypstab::spectral_radius(m));
}
BENCHMARK(bm_spectral_radius)->Arg(2)->Arg(4);

hypstab::Matrix dense_coupling(int n) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    hypstab::Matrix k(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) k(i, j) = u(rng);
    return k;
}

void bm_rho0_numeric(benchmark::State& state) {
    const hypstab::Matrix k = dense_coupling(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(hypstab::rho0_numeric(k));
}
BENCHMARK(bm_rho0_numeric)->Arg(2)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void bm_rho1_numeric(benchmark::State& state) {
    const hypstab::Matrix k = dense_coupling(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(hypstab::rho1_numeric(k));
}
BENCHMARK(bm_rho1_numeric)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void bm_verdict_balance(benchmark::State& state) {
    hypstab::SaintVenantParams p;
    p.kl_21 = 2.5;
    p.kl_22 = 0.5;
    auto [sys, bc] = hypstab::saint_venant(p);
    const auto rf = hypstab::to_riemann(sys);
    const auto cm = hypstab::build_coupling(rf, bc);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            hypstab::verdict_balance(cm, *rf.source_coupling, rf.lambda, {}));
}
BENCHMARK(bm_verdict_balance)->Unit(benchmark::kMillisecond);

void bm_closed_loop_run(benchmark::State& state) {
    hypstab::DensityFlowParams p;
    p.k0_11 = -1.0;
    p.observable_0 = {true, false};
    p.observable_l = {true, false};
    auto [sys, bc] = hypstab::density_flow(p);
    const auto rf = hypstab::to_riemann(sys);
    const auto cm = hypstab::build_coupling(rf, bc);
    hypstab::SimConfig cfg;
    cfg.dx = 1.0 / static_cast<double>(state.range(0));
    cfg.t_end = 1.0;
    cfg.sample_stride = 1 << 20;
    cfg.initial = {{0.5, 0.3, 1.0}, {0.0, 4.0, 1.0}};
    cfg.equilibrium = {0.0, 0.0};
    for (auto _ : state) benchmark::DoNotOptimize(hypstab::run(rf, cm, cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_closed_loop_run)->Arg(100)->Arg(400)->Arg(1600)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
