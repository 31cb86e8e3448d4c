#include "gwl/embedding.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "gwl/csv.hpp"
#include "gwl/error.hpp"

namespace gwl {
namespace {

Matrix loss_derivative(const Matrix& k, const Matrix& c, const LossSpec& loss) {
  Matrix d(k.rows(), k.cols());
  for (Eigen::Index j = 0; j < k.cols(); ++j) {
    for (Eigen::Index i = 0; i < k.rows(); ++i) {
      d(i, j) = loss.derivative_first(k(i, j), c(i, j));
    }
  }
  return d;
}

Matrix select(const Matrix& m, std::span<const Index> rows,
              std::span<const Index> cols) {
  Matrix out(rows.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (std::size_t i = 0; i < rows.size(); ++i) out(i, j) = m(rows[i], cols[j]);
  }
  return out;
}

Matrix select_columns(const Matrix& m, std::span<const Index> cols) {
  Matrix out(m.rows(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) out.col(j) = m.col(cols[j]);
  return out;
}

// Objective and (optionally) gradient for explicit embedding blocks and the
// matching sub-blocks of the fixed inputs.
double block_objective(const EmbeddingProblem& p, const EmbeddingMatrix& xs,
                       const EmbeddingMatrix& xt, const Matrix& cs,
                       const Matrix& ct, const Matrix* c_st, const Matrix& t,
                       double transport_scale, EmbeddingGradient* grad) {
  const CostMatrix k_st = kernel_matrix(xs, xt, p.kernel);
  const CostMatrix k_s = kernel_matrix(xs, p.kernel);
  const CostMatrix k_t = kernel_matrix(xt, p.kernel);
  const double wt = p.alpha * transport_scale;

  double value = wt * k_st.cwiseProduct(t).sum();
  value += p.beta * (mean_elementwise_loss(k_s, cs, p.loss) +
                     mean_elementwise_loss(k_t, ct, p.loss));
  if (c_st) value += p.beta * mean_elementwise_loss(k_st, *c_st, p.loss);

  if (grad) {
    Matrix w_st = wt * t;
    if (c_st) {
      w_st += (p.beta / static_cast<double>(k_st.size())) *
              loss_derivative(k_st, *c_st, p.loss);
    }
    const Matrix w_s = (p.beta / static_cast<double>(k_s.size())) *
                       loss_derivative(k_s, cs, p.loss);
    const Matrix w_t = (p.beta / static_cast<double>(k_t.size())) *
                       loss_derivative(k_t, ct, p.loss);
    const KernelGradient g_st = kernel_weighted_gradient(xs, xt, w_st, p.kernel);
    const KernelGradient g_s = kernel_weighted_gradient(xs, xs, w_s, p.kernel);
    const KernelGradient g_t = kernel_weighted_gradient(xt, xt, w_t, p.kernel);
    grad->xs = g_st.xa + g_s.xa + g_s.xb;
    grad->xt = g_st.xb + g_t.xa + g_t.xb;
  }
  return value;
}

struct AdamState {
  Matrix m;
  Matrix v;
};

void adam_columns(EmbeddingMatrix& x, AdamState& state, const Matrix& grad,
                  std::span<const Index> cols, const EmbedOptConfig& cfg,
                  long step) {
  const double c1 = 1.0 - std::pow(cfg.adam_beta1, static_cast<double>(step));
  const double c2 = 1.0 - std::pow(cfg.adam_beta2, static_cast<double>(step));
  for (Index c : cols) {
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
      const double g = grad(r, c);
      double& m = state.m(r, c);
      double& v = state.v(r, c);
      m = cfg.adam_beta1 * m + (1.0 - cfg.adam_beta1) * g;
      v = cfg.adam_beta2 * v + (1.0 - cfg.adam_beta2) * g * g;
      x(r, c) -= cfg.learning_rate * (m / c1) /
                 (std::sqrt(v / c2) + cfg.adam_epsilon);
    }
  }
}

std::vector<Index> iota_vector(Index n) {
  std::vector<Index> v(n);
  std::iota(v.begin(), v.end(), Index{0});
  return v;
}

}  // namespace

void EmbeddingProblem::validate(const EmbeddingMatrix& xs,
                                const EmbeddingMatrix& xt) const {
  const Eigen::Index ns = xs.cols();
  const Eigen::Index nt = xt.cols();
  if (xs.rows() != xt.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "embedding dimensions differ");
  }
  if (cs.rows() != ns || cs.cols() != ns || ct.rows() != nt || ct.cols() != nt ||
      t_hat.rows() != ns || t_hat.cols() != nt) {
    throw Error(ErrorCode::kDimensionMismatch,
                "embedding problem shapes disagree with embeddings");
  }
  if (c_st && (c_st->rows() != ns || c_st->cols() != nt)) {
    throw Error(ErrorCode::kDimensionMismatch, "cross-graph distance shape");
  }
  if (!xs.allFinite() || !xt.allFinite()) {
    throw Error(ErrorCode::kNonFinite, "embeddings have non-finite entries");
  }
}

double embedding_objective(const EmbeddingProblem& problem,
                           const EmbeddingMatrix& xs,
                           const EmbeddingMatrix& xt) {
  problem.validate(xs, xt);
  return block_objective(problem, xs, xt, problem.cs, problem.ct,
                         problem.c_st ? &*problem.c_st : nullptr,
                         problem.t_hat, 1.0, nullptr);
}

EmbeddingGradient embedding_gradient(const EmbeddingProblem& problem,
                                     const EmbeddingMatrix& xs,
                                     const EmbeddingMatrix& xt) {
  problem.validate(xs, xt);
  EmbeddingGradient g;
  block_objective(problem, xs, xt, problem.cs, problem.ct,
                  problem.c_st ? &*problem.c_st : nullptr, problem.t_hat, 1.0,
                  &g);
  return g;
}

double batch_objective(const EmbeddingProblem& problem,
                       const EmbeddingMatrix& xs, const EmbeddingMatrix& xt,
                       std::span<const Index> source_batch,
                       std::span<const Index> target_batch,
                       EmbeddingGradient* gradient) {
  problem.validate(xs, xt);
  if (source_batch.empty() || target_batch.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty node batch");
  }
  for (Index i : source_batch) {
    if (i >= static_cast<Index>(xs.cols())) {
      throw Error(ErrorCode::kIndexOutOfRange, "source batch index");
    }
  }
  for (Index j : target_batch) {
    if (j >= static_cast<Index>(xt.cols())) {
      throw Error(ErrorCode::kIndexOutOfRange, "target batch index");
    }
  }
  const Matrix bxs = select_columns(xs, source_batch);
  const Matrix bxt = select_columns(xt, target_batch);
  const Matrix bcs = select(problem.cs, source_batch, source_batch);
  const Matrix bct = select(problem.ct, target_batch, target_batch);
  const Matrix bt = select(problem.t_hat, source_batch, target_batch);
  std::optional<Matrix> bcst;
  if (problem.c_st) bcst = select(*problem.c_st, source_batch, target_batch);
  const double scale =
      static_cast<double>(xs.cols()) * static_cast<double>(xt.cols()) /
      (static_cast<double>(source_batch.size()) *
       static_cast<double>(target_batch.size()));

  EmbeddingGradient local;
  const double value =
      block_objective(problem, bxs, bxt, bcs, bct, bcst ? &*bcst : nullptr, bt,
                      scale, gradient ? &local : nullptr);
  if (gradient) {
    gradient->xs = Matrix::Zero(xs.rows(), xs.cols());
    gradient->xt = Matrix::Zero(xt.rows(), xt.cols());
    for (std::size_t k = 0; k < source_batch.size(); ++k) {
      gradient->xs.col(source_batch[k]) += local.xs.col(k);
    }
    for (std::size_t k = 0; k < target_batch.size(); ++k) {
      gradient->xt.col(target_batch[k]) += local.xt.col(k);
    }
  }
  return value;
}

EmbeddingUpdate update_embeddings(EmbeddingMatrix& xs, EmbeddingMatrix& xt,
                                  const EmbeddingProblem& problem,
                                  const EmbedOptConfig& config, Rng& rng) {
  if (config.epochs < 0 || config.batch_size < 1 ||
      !(config.learning_rate > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "embedding optimizer config");
  }
  EmbeddingUpdate report;
  report.objective_before = embedding_objective(problem, xs, xt);
  const EmbeddingMatrix xs0 = xs;
  const EmbeddingMatrix xt0 = xt;

  const Index ns = xs.cols();
  const Index nt = xt.cols();
  const Index batch = static_cast<Index>(config.batch_size);
  const Index batches = (std::max(ns, nt) + batch - 1) / batch;
  AdamState adam_s{Matrix::Zero(xs.rows(), ns), Matrix::Zero(xs.rows(), ns)};
  AdamState adam_t{Matrix::Zero(xt.rows(), nt), Matrix::Zero(xt.rows(), nt)};
  std::vector<Index> perm_s = iota_vector(ns);
  std::vector<Index> perm_t = iota_vector(nt);
  long step = 0;

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    if (batches > 1) {
      std::shuffle(perm_s.begin(), perm_s.end(), rng);
      std::shuffle(perm_t.begin(), perm_t.end(), rng);
    }
    for (Index b = 0; b < batches; ++b) {
      std::span<const Index> sb(perm_s.data() + b * ns / batches,
                                (b + 1) * ns / batches - b * ns / batches);
      std::span<const Index> tb(perm_t.data() + b * nt / batches,
                                (b + 1) * nt / batches - b * nt / batches);
      if (sb.empty() || tb.empty()) continue;
      EmbeddingGradient g;
      batch_objective(problem, xs, xt, sb, tb, &g);
      ++step;
      adam_columns(xs, adam_s, g.xs, sb, config, step);
      adam_columns(xt, adam_t, g.xt, tb, config, step);
      if (!xs.allFinite() || !xt.allFinite()) break;
    }
    if (!xs.allFinite() || !xt.allFinite()) break;
  }
  report.steps = static_cast<int>(step);

  double after = std::numeric_limits<double>::infinity();
  if (xs.allFinite() && xt.allFinite()) {
    try {
      after = embedding_objective(problem, xs, xt);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kZeroVector) throw;
    }
  }
  const bool blew_up =
      !std::isfinite(after) ||
      (after > config.divergence_factor * report.objective_before &&
       after - report.objective_before > 1e-12);
  if (blew_up) {
    xs = xs0;
    xt = xt0;
    report.diverged = true;
    report.objective_after = report.objective_before;
  } else {
    report.objective_after = after;
  }
  return report;
}

EmbeddingMatrix init_embeddings(int dim, Index node_count, Rng& rng) {
  if (dim < 1) throw Error(ErrorCode::kInvalidArgument, "embedding dim < 1");
  const double bound = 1.0 / std::sqrt(static_cast<double>(dim));
  std::uniform_real_distribution<double> dist(-bound, bound);
  EmbeddingMatrix x(dim, node_count);
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) x(i, j) = dist(rng);
  }
  return x;
}

void write_embeddings_csv(std::ostream& out, const EmbeddingMatrix& x,
                          const std::vector<std::string>& labels) {
  if (labels.size() != static_cast<std::size_t>(x.cols())) {
    throw Error(ErrorCode::kDimensionMismatch, "labels vs embedding columns");
  }
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    out << labels[j];
    for (Eigen::Index i = 0; i < x.rows(); ++i) out << ',' << format_double(x(i, j));
    out << '\n';
  }
}

EmbeddingMatrix read_embeddings_csv(std::istream& in,
                                    std::vector<std::string>* labels) {
  std::vector<std::vector<double>> rows;
  std::vector<std::string> names;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::getline(ss, cell, ',');
    names.push_back(cell);
    std::vector<double> values;
    while (std::getline(ss, cell, ',')) {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc()) {
        throw Error(ErrorCode::kMalformedLine,
                    "line " + std::to_string(line_no) + ": bad value '" + cell + "'");
      }
      values.push_back(v);
    }
    if (!rows.empty() && values.size() != rows.front().size()) {
      throw Error(ErrorCode::kMalformedLine,
                  "line " + std::to_string(line_no) + ": dimension changes");
    }
    rows.push_back(std::move(values));
  }
  const Index dim = rows.empty() ? 0 : rows.front().size();
  EmbeddingMatrix x(dim, rows.size());
  for (std::size_t j = 0; j < rows.size(); ++j) {
    for (Index i = 0; i < dim; ++i) x(i, j) = rows[j][i];
  }
  if (labels) *labels = std::move(names);
  return x;
}

}  // namespace gwl
