#pragma once

#include <string>
#include <vector>

#include "gwl/graph.hpp"
#include "gwl/gw_solver.hpp"
#include "gwl/metrics.hpp"
#include "gwl/pipeline.hpp"
#include "gwl/rng.hpp"
#include "gwl/synth.hpp"

namespace gwl::cli {

// Users and items with a hidden one-to-one correspondence: the item graph is a
// noisy, shuffled copy of the user graph. A fraction of the true user-item
// pairs is observed; the rest is held out for scoring.
struct PlantedRecommendation {
  Graph users;
  Graph items;
  std::vector<CrossObservation> observed;
  // Held-out user -> true item.
  GroundTruth held_out;
};

PlantedRecommendation make_planted_recommendation(Index users, double q_percent,
                                                  double observed_fraction,
                                                  SynthFamily family, Rng& rng);

struct Recommendations {
  std::vector<std::vector<Index>> by_transport;
  std::vector<std::vector<Index>> by_embedding;  // empty without embeddings
  GwlResult result;
};

Recommendations recommend(const Graph& users, const Graph& items,
                          const std::vector<CrossObservation>& observed,
                          std::size_t top_l, const GwlConfig& config);

// Scores the lists of the users that appear in `truth`.
TopLScores score_recommendations(const std::vector<std::vector<Index>>& lists,
                                 const std::map<Index, std::vector<Index>>& truth,
                                 std::size_t top_l);

struct SolverRun {
  OtMethod method = OtMethod::kProximal;
  double gamma = 0.0;
  int sinkhorn_iterations = 0;
  SolverTrace trace;
  double final_objective = 0.0;

  bool unstable() const { return !trace.ok(); }
};

std::string_view to_string(OtMethod method);
OtMethod parse_ot_method(std::string_view name);

// Every (method, gamma, J) combination on the data distances of one pair,
// from the product coupling, for exactly N steps unless a step blows up.
std::vector<SolverRun> compare_solvers(const Graph& source, const Graph& target,
                                       const std::vector<OtMethod>& methods,
                                       const std::vector<double>& gammas,
                                       const std::vector<int>& sinkhorn_steps,
                                       int inner_iterations, LossSpec loss,
                                       bool log_domain_fallback);

}  // namespace gwl::cli
