#include "gwl/pipeline.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "gwl/error.hpp"
#include "gwl/rng.hpp"

namespace gwl {

KernelSpec GwlConfig::kernel_spec() const {
  if (kernel == KernelKind::kCosine) return KernelSpec::cosine(sigma.value_or(10.0));
  return KernelSpec::rbf(sigma.value_or(static_cast<double>(dim)));
}

void GwlConfig::validate() const {
  if (outer_iterations < 1 || inner_iterations < 1 || sinkhorn_iterations < 1 ||
      dim < 1) {
    throw Error(ErrorCode::kInvalidArgument, "M, N, J and D must be >= 1");
  }
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw Error(ErrorCode::kInvalidArgument, "gamma must be positive");
  }
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw Error(ErrorCode::kInvalidArgument, "beta must be positive");
  }
  if (sigma && !(*sigma > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "sigma must be positive");
  }
}

double alpha_schedule(int m, int total) {
  if (total < 1 || m < 0 || m >= total) {
    throw Error(ErrorCode::kInvalidArgument,
                "alpha schedule index " + std::to_string(m) + " of " +
                    std::to_string(total));
  }
  return static_cast<double>(m) / static_cast<double>(total);
}

Matching extract_matching(const Coupling& t) {
  Matching out;
  out.reserve(t.rows());
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    Eigen::Index best = 0;
    for (Eigen::Index j = 1; j < t.cols(); ++j) {
      if (t(i, j) > t(i, best)) best = j;
    }
    out.emplace_back(i, best);
  }
  return out;
}

Matching extract_matching_by_embedding(const EmbeddingMatrix& xs,
                                       const EmbeddingMatrix& xt,
                                       const KernelSpec& kernel) {
  const CostMatrix k = kernel_matrix(xs, xt, kernel);
  Matching out;
  out.reserve(k.rows());
  for (Eigen::Index i = 0; i < k.rows(); ++i) {
    Eigen::Index best = 0;
    for (Eigen::Index j = 1; j < k.cols(); ++j) {
      if (k(i, j) < k(i, best)) best = j;
    }
    out.emplace_back(i, best);
  }
  return out;
}

namespace {

Matching orient(Matching m, bool swapped) {
  if (swapped) {
    for (auto& [a, b] : m) std::swap(a, b);
  }
  return m;
}

}  // namespace

GwlResult run_gwl(const GwlInputs& inputs, const GwlConfig& config) {
  config.validate();
  if (!inputs.source || !inputs.target) {
    throw Error(ErrorCode::kInvalidArgument, "run_gwl needs two graphs");
  }
  GwlResult result;
  result.swapped = inputs.source->node_count() > inputs.target->node_count();
  const Graph& gs = result.swapped ? *inputs.target : *inputs.source;
  const Graph& gt = result.swapped ? *inputs.source : *inputs.target;
  const Index ns = gs.node_count();
  const Index nt = gt.node_count();

  const CostMatrix cs = data_distance_matrix(gs);
  const CostMatrix ct = data_distance_matrix(gt);
  const NodeDistribution mu_s = node_distribution(gs);
  const NodeDistribution mu_t = node_distribution(gt);

  std::optional<CostMatrix> c_st;
  if (!inputs.cross.empty()) {
    std::vector<CrossObservation> cross(inputs.cross.begin(), inputs.cross.end());
    if (result.swapped) {
      for (auto& o : cross) std::swap(o.source, o.target);
    }
    c_st = cross_distance_matrix(cross, ns, nt);
  }

  const bool learn = config.schedule == AlphaSchedule::kLinear;
  const KernelSpec kernel = config.kernel_spec();
  EmbeddingMatrix xs;
  EmbeddingMatrix xt;
  Rng batch_rng = make_rng(config.seed, streams::kBatching);
  if (learn) {
    Rng init_rng = make_rng(config.seed, streams::kEmbedInit);
    xs = init_embeddings(config.dim, ns, init_rng);
    xt = init_embeddings(config.dim, nt, init_rng);
  }
  result.learned_embeddings = learn;

  SolverOptions options;
  options.gamma = config.gamma;
  options.inner_iterations = config.inner_iterations;
  options.sinkhorn_iterations = config.sinkhorn_iterations;
  options.early_exit = config.early_exit;
  options.record_timing = config.record_timing;

  const Coupling uniform = product_coupling(mu_s, mu_t);
  Coupling t = uniform;
  int inner_offset = 0;

  for (int m = 0; m < config.outer_iterations; ++m) {
    OuterRecord rec;
    rec.iteration = m;
    rec.alpha = learn ? alpha_schedule(m, config.outer_iterations) : 0.0;

    OtProblem problem;
    problem.mu_s = mu_s;
    problem.mu_t = mu_t;
    problem.alpha = rec.alpha;
    problem.loss = config.loss;
    try {
      problem.cs = learn ? mixed_distance_matrix(cs, xs, kernel, rec.alpha) : cs;
      problem.ct = learn ? mixed_distance_matrix(ct, xt, kernel, rec.alpha) : ct;
      if (learn && rec.alpha > 0.0) problem.k_st = kernel_matrix(xs, xt, kernel);
    } catch (const Error& e) {
      result.failure = "outer iteration " + std::to_string(m) + ": " + e.what();
      break;
    }

    OtSolution sol =
        solve_ot_subproblem(problem, config.warm_start ? t : uniform, options);
    for (auto r : sol.trace.records) {
      r.iteration += inner_offset;
      result.solver_trace.records.push_back(r);
    }
    inner_offset += static_cast<int>(sol.trace.records.size());
    result.solver_trace.used_log_domain =
        result.solver_trace.used_log_domain || sol.trace.used_log_domain;
    rec.inner_steps = static_cast<int>(sol.trace.records.size());
    if (!sol.trace.ok()) {
      result.failure =
          "outer iteration " + std::to_string(m) + ": " + *sol.trace.failure;
      result.solver_trace.failure = result.failure;
      t = std::move(sol.plan);
      result.trace.push_back(rec);
      break;
    }
    t = std::move(sol.plan);
    rec.ot_objective = sol.trace.records.empty() ? ot_objective(problem, t)
                                                 : sol.trace.records.back().objective;
    rec.gw_discrepancy = gw_discrepancy(cs, ct, t, config.loss);

    if (learn) {
      EmbeddingProblem ep;
      ep.cs = cs;
      ep.ct = ct;
      ep.c_st = c_st;
      ep.t_hat = t;
      ep.alpha = rec.alpha;
      ep.beta = config.beta;
      ep.kernel = kernel;
      ep.loss = config.loss;
      try {
        EmbeddingUpdate upd = update_embeddings(xs, xt, ep, config.embed, batch_rng);
        rec.embedding_before = upd.objective_before;
        rec.embedding_after = upd.objective_after;
        rec.embedding_diverged = upd.diverged;
        if (upd.diverged) {
          log::warn("embedding update diverged at outer iteration " +
                    std::to_string(m) + "; update discarded");
        }
      } catch (const Error& e) {
        result.failure = "outer iteration " + std::to_string(m) + ": " + e.what();
        result.trace.push_back(rec);
        break;
      }
    }

    if (inputs.truth) {
      rec.nc_transport =
          node_correctness(orient(extract_matching(t), result.swapped), *inputs.truth);
      if (learn) {
        rec.nc_embedding = node_correctness(
            orient(extract_matching_by_embedding(xs, xt, kernel), result.swapped),
            *inputs.truth);
      }
    }
    result.trace.push_back(rec);
  }

  result.matching = orient(extract_matching(t), result.swapped);
  if (learn && !result.failure) {
    result.embedding_matching =
        orient(extract_matching_by_embedding(xs, xt, kernel), result.swapped);
  }
  if (result.swapped) {
    result.coupling = t.transpose();
    result.xs = std::move(xt);
    result.xt = std::move(xs);
  } else {
    result.coupling = std::move(t);
    result.xs = std::move(xs);
    result.xt = std::move(xt);
  }
  return result;
}

GwlResult run_gwl(const Graph& source, const Graph& target,
                  const GwlConfig& config) {
  GwlInputs inputs;
  inputs.source = &source;
  inputs.target = &target;
  return run_gwl(inputs, config);
}

}  // namespace gwl
