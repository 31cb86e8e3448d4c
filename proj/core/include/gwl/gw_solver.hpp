#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gwl/loss.hpp"
#include "gwl/sinkhorn.hpp"
#include "gwl/types.hpp"

namespace gwl {

// The transport sub-problem for fixed embeddings:
//   min_T <L(Cs, Ct, T), T> + alpha <K_st, T>   s.t. T in Pi(mu_s, mu_t)
// Cs and Ct are the (possibly embedding-mixed) within-graph distances.
struct OtProblem {
  CostMatrix cs;
  CostMatrix ct;
  std::optional<CostMatrix> k_st;  // cross-graph embedding distances
  NodeDistribution mu_s;
  NodeDistribution mu_t;
  double alpha = 0.0;
  LossSpec loss = LossSpec::mse();

  void validate() const;
};

// Objective of the sub-problem evaluated at T.
double ot_objective(const OtProblem& problem, const Coupling& t);

// Cost of one inner step: L(Cs, Ct, T_prev) + alpha K_st + gamma.
CostMatrix step_cost(const OtProblem& problem, const Coupling& t_prev,
                     double gamma);

enum class OtMethod {
  kProximal,  // KL(T || T_prev) regularizer
  kEntropic,  // entropy regularizer
};

// Mutable Sinkhorn state carried between inner steps (the row scaling a).
struct StepState {
  std::optional<Vector> a;
  bool used_log_domain = false;
};

Coupling proximal_gw_step(const OtProblem& problem, const Coupling& t_prev,
                          double gamma, int sinkhorn_iterations,
                          StepState* state = nullptr,
                          bool log_domain_fallback = true);

Coupling entropic_gw_step(const OtProblem& problem, const Coupling& t_prev,
                          double gamma, int sinkhorn_iterations,
                          StepState* state = nullptr,
                          bool log_domain_fallback = true);

struct SolverOptions {
  double gamma = 0.01;
  int inner_iterations = 200;  // N
  int sinkhorn_iterations = 10;  // J
  OtMethod method = OtMethod::kProximal;
  // Stop once the relative objective change stays below early_exit_tolerance
  // for early_exit_patience consecutive steps.
  bool early_exit = true;
  double early_exit_tolerance = 1e-9;
  int early_exit_patience = 5;
  bool log_domain_fallback = true;
  bool record_timing = false;
};

struct TraceRecord {
  int iteration = 0;
  double objective = 0.0;
  double marginal_violation = 0.0;
  double entropy = 0.0;
  double ms = 0.0;
};

struct SolverTrace {
  std::vector<TraceRecord> records;
  bool used_log_domain = false;
  // Set when a step produced non-finite values; the trace is truncated there.
  std::optional<std::string> failure;

  bool ok() const { return !failure.has_value(); }
};

struct OtSolution {
  Coupling plan;
  SolverTrace trace;
};

// Runs up to N inner steps from `init`. Never throws on numerical failure;
// instead the trace carries the failure and `plan` is the last finite iterate.
OtSolution solve_ot_subproblem(const OtProblem& problem, const Coupling& init,
                               const SolverOptions& options);

// Outer product mu_s mu_t^T.
Coupling product_coupling(const NodeDistribution& mu_s,
                          const NodeDistribution& mu_t);

// CSV with header "iter,objective,marginal_violation,entropy,ms".
// `iteration_offset` is added to every iter value.
void write_trace_csv(std::ostream& out, const SolverTrace& trace,
                     bool header = true, int iteration_offset = 0);

// Sparse "i,j,value" triples for entries above `threshold`.
void write_coupling_triples(std::ostream& out, const Coupling& t,
                            double threshold = 1e-12);

}  // namespace gwl
