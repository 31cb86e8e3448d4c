#include "gwl/gw_solver.hpp"

#include <chrono>
#include <cmath>
#include <ostream>
#include <string>

#include "gwl/csv.hpp"
#include "gwl/error.hpp"

namespace gwl {

void OtProblem::validate() const {
  if (cs.rows() == 0 || ct.rows() == 0) {
    throw Error(ErrorCode::kEmptyGraph, "empty distance matrix");
  }
  if (cs.rows() != cs.cols() || ct.rows() != ct.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "distance matrices must be square");
  }
  if (mu_s.size() != cs.rows() || mu_t.size() != ct.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "marginal length");
  }
  if (k_st && (k_st->rows() != cs.rows() || k_st->cols() != ct.rows())) {
    throw Error(ErrorCode::kDimensionMismatch, "cross-graph kernel shape");
  }
  if (alpha < 0.0 || !std::isfinite(alpha)) {
    throw Error(ErrorCode::kInvalidArgument, "alpha must be finite and >= 0");
  }
}

double ot_objective(const OtProblem& problem, const Coupling& t) {
  double value = gw_discrepancy(problem.cs, problem.ct, t, problem.loss);
  if (problem.k_st && problem.alpha != 0.0) {
    value += problem.alpha * problem.k_st->cwiseProduct(t).sum();
  }
  return value;
}

CostMatrix step_cost(const OtProblem& problem, const Coupling& t_prev,
                     double gamma) {
  CostMatrix cost = loss_tensor_product(problem.cs, problem.ct, t_prev,
                                        problem.mu_s, problem.mu_t, problem.loss);
  if (problem.k_st && problem.alpha != 0.0) cost += problem.alpha * *problem.k_st;
  cost.array() += gamma;
  return cost;
}

namespace {

Coupling gw_step(const OtProblem& problem, const Coupling& t_prev, double gamma,
                 int sinkhorn_iterations, StepState* state,
                 bool log_domain_fallback, bool proximal) {
  const CostMatrix cost = step_cost(problem, t_prev, gamma);
  SinkhornOptions options;
  options.iterations = sinkhorn_iterations;
  options.log_domain_fallback = log_domain_fallback;
  const Coupling prior =
      proximal ? t_prev : Coupling::Ones(t_prev.rows(), t_prev.cols());
  std::optional<Vector> a_init;
  if (state) a_init = state->a;
  SinkhornResult r =
      sinkhorn(cost, problem.mu_s, problem.mu_t, gamma, prior, options, a_init);
  if (state) {
    state->a = std::move(r.a);
    state->used_log_domain = state->used_log_domain || r.used_log_domain;
  }
  return std::move(r.plan);
}

}  // namespace

Coupling proximal_gw_step(const OtProblem& problem, const Coupling& t_prev,
                          double gamma, int sinkhorn_iterations,
                          StepState* state, bool log_domain_fallback) {
  return gw_step(problem, t_prev, gamma, sinkhorn_iterations, state,
                 log_domain_fallback, true);
}

Coupling entropic_gw_step(const OtProblem& problem, const Coupling& t_prev,
                          double gamma, int sinkhorn_iterations,
                          StepState* state, bool log_domain_fallback) {
  return gw_step(problem, t_prev, gamma, sinkhorn_iterations, state,
                 log_domain_fallback, false);
}

Coupling product_coupling(const NodeDistribution& mu_s,
                          const NodeDistribution& mu_t) {
  return mu_s * mu_t.transpose();
}

OtSolution solve_ot_subproblem(const OtProblem& problem, const Coupling& init,
                               const SolverOptions& options) {
  problem.validate();
  if (init.rows() != problem.cs.rows() || init.cols() != problem.ct.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "initial coupling shape");
  }
  if (options.inner_iterations < 1 || options.sinkhorn_iterations < 1 ||
      !(options.gamma > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "solver options");
  }
  using Clock = std::chrono::steady_clock;
  OtSolution out{init, {}};
  StepState state;
  double previous = ot_objective(problem, init);
  int quiet_steps = 0;
  const bool proximal = options.method == OtMethod::kProximal;

  for (int n = 0; n < options.inner_iterations; ++n) {
    const auto start = Clock::now();
    Coupling next;
    try {
      next = gw_step(problem, out.plan, options.gamma,
                     options.sinkhorn_iterations, &state,
                     options.log_domain_fallback, proximal);
    } catch (const Error& e) {
      if (!e.is_numerical()) throw;
      out.trace.failure = "inner step " + std::to_string(n) + ": " + e.what();
      break;
    }
    const double objective = ot_objective(problem, next);
    if (!std::isfinite(objective)) {
      out.trace.failure =
          "inner step " + std::to_string(n) + ": objective is not finite";
      break;
    }
    out.plan = std::move(next);

    TraceRecord rec;
    rec.iteration = n;
    rec.objective = objective;
    rec.marginal_violation =
        marginal_violation(out.plan, problem.mu_s, problem.mu_t);
    rec.entropy = coupling_entropy(out.plan);
    if (options.record_timing) {
      rec.ms = std::chrono::duration<double, std::milli>(Clock::now() - start)
                   .count();
    }
    out.trace.records.push_back(rec);

    if (options.early_exit) {
      const double scale = std::max(std::abs(previous), 1e-300);
      if (std::abs(objective - previous) / scale < options.early_exit_tolerance) {
        if (++quiet_steps >= options.early_exit_patience) break;
      } else {
        quiet_steps = 0;
      }
    }
    previous = objective;
  }
  out.trace.used_log_domain = state.used_log_domain;
  return out;
}

void write_trace_csv(std::ostream& out, const SolverTrace& trace, bool header,
                     int iteration_offset) {
  if (header) out << "iter,objective,marginal_violation,entropy,ms\n";
  for (const auto& r : trace.records) {
    out << r.iteration + iteration_offset << ',' << format_double(r.objective)
        << ',' << format_double(r.marginal_violation) << ','
        << format_double(r.entropy) << ',' << format_double(r.ms) << '\n';
  }
}

void write_coupling_triples(std::ostream& out, const Coupling& t,
                            double threshold) {
  out << "i,j,value\n";
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    for (Eigen::Index j = 0; j < t.cols(); ++j) {
      if (t(i, j) > threshold) {
        out << i << ',' << j << ',' << format_double(t(i, j)) << '\n';
      }
    }
  }
}

}  // namespace gwl
