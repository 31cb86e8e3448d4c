#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gwl/embedding.hpp"
#include "gwl/graph.hpp"
#include "gwl/gw_solver.hpp"
#include "gwl/kernel.hpp"
#include "gwl/loss.hpp"
#include "gwl/metrics.hpp"
#include "gwl/types.hpp"

namespace gwl {

enum class AlphaSchedule {
  kLinear,  // alpha_m = m / M
  kZero,    // pure GW discrepancy on data distances, no embeddings
};

struct GwlConfig {
  int outer_iterations = 30;  // M
  int inner_iterations = 200;  // N
  int sinkhorn_iterations = 10;  // J
  double gamma = 0.01;
  double beta = 10.0;
  int dim = 100;  // D
  LossSpec loss = LossSpec::mse();
  KernelKind kernel = KernelKind::kCosine;
  // Kernel bandwidth; defaults to 10 for cosine and D for RBF.
  std::optional<double> sigma;
  AlphaSchedule schedule = AlphaSchedule::kLinear;
  EmbedOptConfig embed;
  std::uint64_t seed = 0;
  // Start each outer iteration's proximal chain from the previous coupling
  // instead of mu_s mu_t^T.
  bool warm_start = true;
  bool early_exit = true;
  bool record_timing = false;

  KernelSpec kernel_spec() const;
  void validate() const;
};

double alpha_schedule(int m, int total);

struct OuterRecord {
  int iteration = 0;
  double alpha = 0.0;
  double gw_discrepancy = 0.0;  // on data distances
  double ot_objective = 0.0;    // sub-problem objective on mixed distances
  int inner_steps = 0;
  double embedding_before = 0.0;
  double embedding_after = 0.0;
  bool embedding_diverged = false;
  std::optional<double> nc_transport;
  std::optional<double> nc_embedding;
};

struct GwlResult {
  Coupling coupling;  // |Vs| x |Vt| in caller orientation
  EmbeddingMatrix xs;
  EmbeddingMatrix xt;
  // Pairs in caller orientation (source, target). One pair per node of the
  // smaller graph.
  Matching matching;
  Matching embedding_matching;  // empty when no embeddings were learned
  std::vector<OuterRecord> trace;
  SolverTrace solver_trace;  // all inner steps, iterations numbered globally
  bool swapped = false;
  bool learned_embeddings = false;
  std::optional<std::string> failure;

  bool ok() const { return !failure.has_value(); }
};

struct GwlInputs {
  const Graph* source = nullptr;
  const Graph* target = nullptr;
  std::span<const CrossObservation> cross;  // optional partial correspondences
  const GroundTruth* truth = nullptr;        // enables NC in the trace
};

// Alternates proximal-point transport updates with embedding updates for M
// outer iterations, then reads off correspondences from the coupling.
// The smaller graph is always matched into the larger one.
GwlResult run_gwl(const GwlInputs& inputs, const GwlConfig& config);
GwlResult run_gwl(const Graph& source, const Graph& target,
                  const GwlConfig& config);

// Row argmax; ties go to the smallest column.
Matching extract_matching(const Coupling& t);

// For each source column, the nearest target column under the kernel; ties go
// to the smallest index.
Matching extract_matching_by_embedding(const EmbeddingMatrix& xs,
                                       const EmbeddingMatrix& xt,
                                       const KernelSpec& kernel);

}  // namespace gwl
