#include "workflows.hpp"

#include <algorithm>
#include <numeric>

#include "gwl/error.hpp"
#include "gwl/kernel.hpp"

namespace gwl::cli {

PlantedRecommendation make_planted_recommendation(Index users, double q_percent,
                                                  double observed_fraction,
                                                  SynthFamily family, Rng& rng) {
  if (!(observed_fraction >= 0.0 && observed_fraction < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "observed fraction must be in [0, 1)");
  }
  const Graph source = generate_source(family, users, rng);
  const NoisyPair noisy = inject_noise(source, q_percent, family, rng);
  const Index n_items = noisy.target.node_count();

  std::vector<Index> perm(n_items);
  std::iota(perm.begin(), perm.end(), Index{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Edge> item_edges;
  for (const Edge& e : noisy.target.edges()) {
    item_edges.push_back({perm[e.src], perm[e.dst], e.weight});
  }
  std::vector<std::string> user_labels(users), item_labels(n_items);
  for (Index i = 0; i < users; ++i) user_labels[i] = "user" + std::to_string(i);
  for (Index i = 0; i < n_items; ++i) item_labels[i] = "item" + std::to_string(i);

  PlantedRecommendation out{
      Graph(users, {source.edges().begin(), source.edges().end()}, false,
            std::move(user_labels)),
      Graph(n_items, std::move(item_edges), false, std::move(item_labels)),
      {},
      {}};
  std::bernoulli_distribution observe(observed_fraction);
  for (const auto& [u, t] : noisy.truth) {
    if (observe(rng)) {
      out.observed.push_back({u, perm[t], 1.0});
    } else {
      out.held_out.emplace(u, perm[t]);
    }
  }
  return out;
}

Recommendations recommend(const Graph& users, const Graph& items,
                          const std::vector<CrossObservation>& observed,
                          std::size_t top_l, const GwlConfig& config) {
  GwlInputs in;
  in.source = &users;
  in.target = &items;
  in.cross = observed;
  Recommendations rec;
  rec.result = run_gwl(in, config);
  rec.by_transport =
      ranked_recommendations(rec.result.coupling, top_l, RankMode::kTransportDescending);
  if (rec.result.learned_embeddings && rec.result.ok()) {
    const CostMatrix d =
        kernel_matrix(rec.result.xs, rec.result.xt, config.kernel_spec());
    rec.by_embedding = ranked_recommendations(d, top_l, RankMode::kDistanceAscending);
  }
  return rec;
}

TopLScores score_recommendations(const std::vector<std::vector<Index>>& lists,
                                 const std::map<Index, std::vector<Index>>& truth,
                                 std::size_t top_l) {
  std::vector<std::vector<Index>> rec, want;
  for (const auto& [user, items] : truth) {
    if (user >= lists.size()) {
      throw Error(ErrorCode::kIndexOutOfRange, "user " + std::to_string(user));
    }
    rec.push_back(lists[user]);
    want.push_back(items);
  }
  if (rec.empty()) throw Error(ErrorCode::kInvalidArgument, "no held-out users to score");
  return topl_metrics(rec, want, top_l);
}

std::string_view to_string(OtMethod method) {
  return method == OtMethod::kProximal ? "proximal" : "entropic";
}

OtMethod parse_ot_method(std::string_view name) {
  if (name == "proximal") return OtMethod::kProximal;
  if (name == "entropic") return OtMethod::kEntropic;
  throw Error(ErrorCode::kInvalidArgument, "unknown solver '" + std::string(name) + "'");
}

std::vector<SolverRun> compare_solvers(const Graph& source, const Graph& target,
                                       const std::vector<OtMethod>& methods,
                                       const std::vector<double>& gammas,
                                       const std::vector<int>& sinkhorn_steps,
                                       int inner_iterations, LossSpec loss,
                                       bool log_domain_fallback) {
  OtProblem problem;
  problem.cs = data_distance_matrix(source);
  problem.ct = data_distance_matrix(target);
  problem.mu_s = node_distribution(source);
  problem.mu_t = node_distribution(target);
  problem.loss = loss;
  const Coupling init = product_coupling(problem.mu_s, problem.mu_t);

  std::vector<SolverRun> runs;
  for (OtMethod method : methods) {
    for (double gamma : gammas) {
      for (int j : sinkhorn_steps) {
        SolverOptions opt;
        opt.method = method;
        opt.gamma = gamma;
        opt.sinkhorn_iterations = j;
        opt.inner_iterations = inner_iterations;
        opt.early_exit = false;
        opt.log_domain_fallback = log_domain_fallback;
        OtSolution sol = solve_ot_subproblem(problem, init, opt);
        SolverRun run;
        run.method = method;
        run.gamma = gamma;
        run.sinkhorn_iterations = j;
        run.final_objective = sol.trace.records.empty()
                                  ? ot_objective(problem, init)
                                  : sol.trace.records.back().objective;
        run.trace = std::move(sol.trace);
        runs.push_back(std::move(run));
      }
    }
  }
  return runs;
}

}  // namespace gwl::cli
