#include <benchmark/benchmark.h>

#include "gwl/gw_solver.hpp"
#include "gwl/loss.hpp"
#include "gwl/pipeline.hpp"
#include "gwl/rng.hpp"
#include "gwl/sinkhorn.hpp"
#include "gwl/synth.hpp"

namespace {

struct Instance {
  gwl::OtProblem problem;
  gwl::Coupling init;
};

Instance make_instance(gwl::Index n) {
  gwl::Rng rng = gwl::make_rng(7, "bench");
  const gwl::Graph s = gwl::gen_knn_source(n, rng);
  const gwl::NoisyPair pair = gwl::inject_noise(s, 10.0, gwl::SynthFamily::kKnn, rng);
  Instance inst;
  inst.problem.cs = gwl::data_distance_matrix(s);
  inst.problem.ct = gwl::data_distance_matrix(pair.target);
  inst.problem.mu_s = gwl::node_distribution(s, 1.0);
  inst.problem.mu_t = gwl::node_distribution(pair.target, 1.0);
  inst.init = gwl::product_coupling(inst.problem.mu_s, inst.problem.mu_t);
  return inst;
}

void BM_LossTensorProduct(benchmark::State& state) {
  const Instance inst = make_instance(state.range(0));
  const auto& p = inst.problem;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        gwl::loss_tensor_product(p.cs, p.ct, inst.init, p.mu_s, p.mu_t, p.loss));
  }
}
BENCHMARK(BM_LossTensorProduct)->Arg(50)->Arg(100)->Arg(200)->Arg(400);

void BM_Sinkhorn(benchmark::State& state) {
  const Instance inst = make_instance(state.range(0));
  const auto& p = inst.problem;
  const gwl::CostMatrix cost =
      gwl::loss_tensor_product(p.cs, p.ct, inst.init, p.mu_s, p.mu_t, p.loss);
  const gwl::SinkhornOptions opts{static_cast<int>(state.range(1)), true};
  for (auto _ : state) {
    benchmark::DoNotOptimize(gwl::sinkhorn(cost, p.mu_s, p.mu_t, 0.1, inst.init, opts));
  }
}
BENCHMARK(BM_Sinkhorn)->Args({100, 1})->Args({100, 10})->Args({400, 10});

void BM_ProximalStep(benchmark::State& state) {
  const Instance inst = make_instance(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gwl::proximal_gw_step(inst.problem, inst.init, 0.01, 10));
  }
}
BENCHMARK(BM_ProximalStep)->Arg(50)->Arg(100)->Arg(200);

void BM_SolveSubproblem(benchmark::State& state) {
  const Instance inst = make_instance(state.range(0));
  gwl::SolverOptions opts;
  opts.early_exit = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gwl::solve_ot_subproblem(inst.problem, inst.init, opts));
  }
}
BENCHMARK(BM_SolveSubproblem)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_RunGwl(benchmark::State& state) {
  gwl::Rng rng = gwl::make_rng(11, "bench-gwl");
  const gwl::Graph s = gwl::gen_knn_source(state.range(0), rng);
  const gwl::NoisyPair pair = gwl::inject_noise(s, 10.0, gwl::SynthFamily::kKnn, rng);
  gwl::GwlConfig cfg;
  cfg.outer_iterations = 5;
  cfg.inner_iterations = 50;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gwl::run_gwl(s, pair.target, cfg));
  }
}
BENCHMARK(BM_RunGwl)->Arg(20)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
