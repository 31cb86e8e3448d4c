#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "gwl/error.hpp"
#include "gwl/graph.hpp"
#include "gwl/gw_solver.hpp"
#include "gwl/pipeline.hpp"
#include "gwl/synth.hpp"
#include "oracles.hpp"

namespace gwl {
namespace {

OtProblem graph_problem(const Graph& s, const Graph& t) {
  OtProblem p;
  p.cs = data_distance_matrix(s);
  p.ct = data_distance_matrix(t);
  p.mu_s = node_distribution(s);
  p.mu_t = node_distribution(t);
  return p;
}

// 4 nodes whose only automorphism is the identity.
Graph asymmetric_four() {
  return Graph(4, {{0, 1, 1.0}, {1, 2, 3.0}, {2, 3, 7.0}, {0, 2, 2.0}});
}

TEST(OtProblem, Validation) {
  OtProblem p = graph_problem(asymmetric_four(), asymmetric_four());
  EXPECT_NO_THROW(p.validate());
  p.alpha = -0.5;
  EXPECT_THROW(p.validate(), Error);
  p.alpha = 0.5;
  p.k_st = Matrix::Zero(3, 4);
  EXPECT_THROW(p.validate(), Error);
  p.k_st.reset();
  p.mu_t = Vector::Constant(3, 1.0 / 3.0);
  EXPECT_THROW(p.validate(), Error);
}

TEST(ProximalStep, AlphaZeroIgnoresCrossKernel) {
  OtProblem p = graph_problem(asymmetric_four(), asymmetric_four());
  const Coupling t0 = product_coupling(p.mu_s, p.mu_t);
  const Coupling without = proximal_gw_step(p, t0, 0.1, 5);
  p.k_st = Matrix::Constant(4, 4, 0.3);
  p.k_st.value()(0, 3) = 0.0;
  p.alpha = 0.0;
  const Coupling with = proximal_gw_step(p, t0, 0.1, 5);
  EXPECT_EQ((with - without).cwiseAbs().maxCoeff(), 0.0);
}

TEST(ProximalStep, StepCostAddsGammaAndCrossTerm) {
  OtProblem p = graph_problem(asymmetric_four(), asymmetric_four());
  const Coupling t0 = product_coupling(p.mu_s, p.mu_t);
  const Matrix base = loss_tensor_product(p.cs, p.ct, t0, p.mu_s, p.mu_t, p.loss);
  p.alpha = 0.25;
  p.k_st = Matrix::Constant(4, 4, 0.4);
  const CostMatrix c = step_cost(p, t0, 0.01);
  EXPECT_LT((c - (base.array() + 0.25 * 0.4 + 0.01).matrix()).cwiseAbs().maxCoeff(),
            1e-15);
}

TEST(Solver, IdenticalGraphsRecoverIdentity) {
  const Graph g = asymmetric_four();
  const OtProblem p = graph_problem(g, g);
  const auto best = oracle::best_permutation(p.cs, p.ct, oracle::Loss::kMse);
  const std::vector<int> identity = {0, 1, 2, 3};
  ASSERT_EQ(best.permutation, identity);

  const OtSolution sol =
      solve_ot_subproblem(p, product_coupling(p.mu_s, p.mu_t), SolverOptions{});
  ASSERT_TRUE(sol.trace.ok());
  const Matching m = extract_matching(sol.plan);
  for (Index i = 0; i < 4; ++i) EXPECT_EQ(m[i].second, i);
  EXPECT_LT(ot_objective(p, sol.plan),
            ot_objective(p, product_coupling(p.mu_s, p.mu_t)));
}

TEST(Solver, ObjectiveNonIncreasingInMajorizingRegime) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(seed);
    const Graph s = gen_knn_source(10, rng);
    const NoisyPair pair = inject_noise(s, 20, SynthFamily::kKnn, rng);
    const OtProblem p = graph_problem(s, pair.target);
    SolverOptions opt;
    opt.gamma = 1.0;
    opt.sinkhorn_iterations = 200;
    opt.inner_iterations = 100;
    opt.early_exit = false;
    const Coupling t0 = product_coupling(p.mu_s, p.mu_t);
    const OtSolution sol = solve_ot_subproblem(p, t0, opt);
    ASSERT_TRUE(sol.trace.ok());
    double previous = ot_objective(p, t0);
    for (const TraceRecord& r : sol.trace.records) {
      EXPECT_LE(r.objective, previous + 1e-8) << "seed " << seed << " step " << r.iteration;
      previous = r.objective;
    }
  }
}

TEST(Solver, FiveNodeInstancesNearPermutationOptimum) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    OtProblem p;
    p.cs = oracle::random_cost(5, rng, true);
    p.ct = oracle::random_cost(5, rng, true);
    p.mu_s = p.mu_t = Vector::Constant(5, 0.2);
    const OtSolution sol =
        solve_ot_subproblem(p, product_coupling(p.mu_s, p.mu_t), SolverOptions{});
    const auto best = oracle::best_permutation(p.cs, p.ct, oracle::Loss::kMse);
    const double got = ot_objective(p, sol.plan);
    EXPECT_TRUE(got <= best.objective + 1e-3 || got <= 1.05 * best.objective)
        << got << " vs " << best.objective;
  }
}

TEST(Solver, TraceLengthBoundedAndEarlyExit) {
  const Graph g = asymmetric_four();
  const OtProblem p = graph_problem(g, g);
  SolverOptions opt;
  opt.inner_iterations = 40;
  const OtSolution sol = solve_ot_subproblem(p, product_coupling(p.mu_s, p.mu_t), opt);
  EXPECT_LE(sol.trace.records.size(), 40u);
  EXPECT_GE(sol.trace.records.size(), 1u);
  for (const auto& r : sol.trace.records) EXPECT_TRUE(std::isfinite(r.objective));

  opt.inner_iterations = 500;
  const OtSolution long_run =
      solve_ot_subproblem(p, product_coupling(p.mu_s, p.mu_t), opt);
  EXPECT_LT(long_run.trace.records.size(), 500u);
  opt.early_exit = false;
  const OtSolution full = solve_ot_subproblem(p, product_coupling(p.mu_s, p.mu_t), opt);
  EXPECT_EQ(full.trace.records.size(), 500u);
}

TEST(Solver, PermutingTargetPermutesCoupling) {
  Rng rng(31);
  const Graph s = gen_knn_source(12, rng);
  std::vector<Index> perm(12);
  std::iota(perm.begin(), perm.end(), Index{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Edge> edges;
  for (const Edge& e : s.edges()) edges.push_back({perm[e.src], perm[e.dst], e.weight});
  const Graph t(12, edges);

  const OtProblem base = graph_problem(s, s);
  const OtProblem permuted = graph_problem(s, t);
  const OtSolution a =
      solve_ot_subproblem(base, product_coupling(base.mu_s, base.mu_t), SolverOptions{});
  const OtSolution b = solve_ot_subproblem(
      permuted, product_coupling(permuted.mu_s, permuted.mu_t), SolverOptions{});
  for (Index i = 0; i < 12; ++i) {
    for (Index j = 0; j < 12; ++j) {
      EXPECT_NEAR(b.plan(i, perm[j]), a.plan(i, j), 1e-9);
    }
  }
  const Matching ma = extract_matching(a.plan);
  const Matching mb = extract_matching(b.plan);
  for (Index i = 0; i < 12; ++i) EXPECT_EQ(mb[i].second, perm[ma[i].second]);
}

TEST(Solver, ScalingCostsKeepsTwoNodeArgmax) {
  Matrix c(2, 2);
  c << 0.0, 0.3, 0.3, 0.0;
  Matrix d(2, 2);
  d << 0.0, 0.6, 0.6, 0.0;
  for (double s : {1.0, 0.5, 2.0}) {
    OtProblem p;
    p.cs = s * c;
    p.ct = s * d;
    p.mu_s = (Vector(2) << 0.7, 0.3).finished();
    p.mu_t = (Vector(2) << 0.6, 0.4).finished();
    const OtSolution sol = solve_ot_subproblem(
        p, product_coupling(p.mu_s, p.mu_t), SolverOptions{.gamma = 0.05});
    const Matching m = extract_matching(sol.plan);
    EXPECT_EQ(m[0].second, 0u);
    EXPECT_EQ(m[1].second, 1u);
  }
}

TEST(EntropicStep, ZeroCostGivesProductCoupling) {
  OtProblem p;
  p.cs = Matrix::Zero(3, 3);
  p.ct = Matrix::Zero(2, 2);
  p.mu_s = (Vector(3) << 0.5, 0.25, 0.25).finished();
  p.mu_t = (Vector(2) << 0.5, 0.5).finished();
  const Coupling t0 = product_coupling(p.mu_s, p.mu_t);
  const Coupling t = entropic_gw_step(p, Matrix::Constant(3, 2, 1.0 / 6.0), 0.1, 3);
  EXPECT_LT((t - t0).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Solver, InstabilityIsRecordedNotThrown) {
  Rng rng(2);
  const Graph s = gen_knn_source(15, rng);
  const OtProblem p = graph_problem(s, s);
  SolverOptions opt;
  opt.method = OtMethod::kEntropic;
  opt.gamma = 1e-4;
  opt.log_domain_fallback = false;
  opt.inner_iterations = 50;
  const OtSolution sol = solve_ot_subproblem(p, product_coupling(p.mu_s, p.mu_t), opt);
  ASSERT_FALSE(sol.trace.ok());
  EXPECT_TRUE(sol.plan.allFinite());
  EXPECT_LT(sol.trace.records.size(), 50u);
}

TEST(Solver, Outputs) {
  SolverTrace trace;
  trace.records.push_back({0, 0.5, 1e-3, 1.25, 0.0});
  trace.records.push_back({1, 0.25, 0.0, 1.0, 0.0});
  std::ostringstream out;
  write_trace_csv(out, trace, true, 10);
  EXPECT_EQ(out.str(),
            "iter,objective,marginal_violation,entropy,ms\n"
            "10,0.5,0.001,1.25,0\n"
            "11,0.25,0,1,0\n");

  Matrix t = Matrix::Zero(2, 2);
  t(0, 1) = 0.5;
  t(1, 0) = 1e-13;
  std::ostringstream triples;
  write_coupling_triples(triples, t);
  EXPECT_EQ(triples.str(), "i,j,value\n0,1,0.5\n");
}

}  // namespace
}  // namespace gwl
