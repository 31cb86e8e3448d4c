#include "gwl/sinkhorn.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "gwl/error.hpp"

namespace gwl {
namespace {

bool in_range(const Vector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double x = v(i);
    if (!(x >= kScalingFloor && x <= kScalingCeiling)) return false;
  }
  return true;
}

// log(sum(exp(v))) treating -inf entries as zero mass.
double log_sum_exp(const Eigen::Ref<const Vector>& v) {
  const double m = v.maxCoeff();
  if (!std::isfinite(m)) return m;
  return m + std::log((v.array() - m).exp().sum());
}

struct Scaled {
  Coupling plan;
  Vector a;
  Vector b;
};

std::optional<Scaled> scale_plain(const Matrix& kernel,
                                  const NodeDistribution& mu_s,
                                  const NodeDistribution& mu_t, Vector a,
                                  int iterations) {
  Vector b(mu_t.size());
  for (int it = 0; it < iterations; ++it) {
    b = mu_t.cwiseQuotient(kernel.transpose() * a);
    if (!in_range(b)) return std::nullopt;
    a = mu_s.cwiseQuotient(kernel * b);
    if (!in_range(a)) return std::nullopt;
  }
  return Scaled{a.asDiagonal() * kernel * b.asDiagonal(), a, b};
}

Scaled scale_log(const CostMatrix& cost, const Coupling& prior,
                 const NodeDistribution& mu_s, const NodeDistribution& mu_t,
                 double gamma, const Vector& a_init, int iterations) {
  const double neg_inf = -std::numeric_limits<double>::infinity();
  const Eigen::Index rows = cost.rows();
  const Eigen::Index cols = cost.cols();
  Matrix log_kernel(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double p = prior(i, j);
      log_kernel(i, j) = p > 0.0 ? -cost(i, j) / gamma + std::log(p) : neg_inf;
    }
  }
  Vector log_a = a_init.array().log();
  if (!log_a.allFinite()) log_a = mu_s.array().log();
  const Vector log_mu_s = mu_s.array().log();
  const Vector log_mu_t = mu_t.array().log();
  Vector log_b(cols);

  for (int it = 0; it < iterations; ++it) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      log_b(j) = log_mu_t(j) - log_sum_exp(log_kernel.col(j) + log_a);
    }
    for (Eigen::Index i = 0; i < rows; ++i) {
      log_a(i) = log_mu_s(i) -
                 log_sum_exp(log_kernel.row(i).transpose() + log_b);
    }
    if (!log_a.allFinite() || !log_b.allFinite()) {
      throw Error(ErrorCode::kNonFinite,
                  "log-domain Sinkhorn: empty kernel row or column (gamma=" +
                      std::to_string(gamma) + ")");
    }
  }
  Coupling plan(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      plan(i, j) = std::exp(log_a(i) + log_kernel(i, j) + log_b(j));
    }
  }
  // Only the shape of a matters as a warm start; keep it representable.
  const double shift = log_a.maxCoeff();
  return Scaled{plan, (log_a.array() - shift).exp(),
                (log_b.array() + shift).exp()};
}

}  // namespace

SinkhornResult sinkhorn(const CostMatrix& cost, const NodeDistribution& mu_s,
                        const NodeDistribution& mu_t, double gamma,
                        const Coupling& prior, const SinkhornOptions& options,
                        const std::optional<Vector>& a_init) {
  if (cost.rows() != mu_s.size() || cost.cols() != mu_t.size() ||
      prior.rows() != cost.rows() || prior.cols() != cost.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "sinkhorn operands");
  }
  if (!(gamma > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "gamma must be positive");
  }
  if (options.iterations < 1) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one Sinkhorn step");
  }
  if (!cost.allFinite()) {
    throw Error(ErrorCode::kNonFinite, "cost matrix has non-finite entries");
  }
  if (a_init && a_init->size() != mu_s.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "warm-start scaling length");
  }
  const Vector a0 = a_init ? *a_init : Vector(mu_s);

  const Matrix kernel = (-cost.array() / gamma).exp().matrix().cwiseProduct(prior);
  SinkhornResult result;
  if (auto plain = scale_plain(kernel, mu_s, mu_t, a0, options.iterations)) {
    result.plan = std::move(plain->plan);
    result.a = std::move(plain->a);
    result.b = std::move(plain->b);
  } else if (options.log_domain_fallback) {
    log::debug("Sinkhorn scaling out of range; switching to log domain");
    Scaled s = scale_log(cost, prior, mu_s, mu_t, gamma, a0, options.iterations);
    result.plan = std::move(s.plan);
    result.a = std::move(s.a);
    result.b = std::move(s.b);
    result.used_log_domain = true;
  } else {
    throw Error(ErrorCode::kNonFinite,
                "Sinkhorn scaling overflow/underflow (gamma=" +
                    std::to_string(gamma) + ")");
  }
  if (!result.plan.allFinite()) {
    throw Error(ErrorCode::kNonFinite, "transport plan has non-finite entries");
  }
  result.marginal_violation = marginal_violation(result.plan, mu_s, mu_t);
  return result;
}

double marginal_violation(const Coupling& t, const NodeDistribution& mu_s,
                          const NodeDistribution& mu_t) {
  const double rows = (t.rowwise().sum() - mu_s).cwiseAbs().maxCoeff();
  const double cols =
      (t.colwise().sum().transpose() - mu_t).cwiseAbs().maxCoeff();
  return std::max(rows, cols);
}

double coupling_entropy(const Coupling& t) {
  double h = 0.0;
  for (Eigen::Index j = 0; j < t.cols(); ++j) {
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
      const double x = t(i, j);
      if (x > 0.0) h -= x * std::log(x);
    }
  }
  return h;
}

}  // namespace gwl
