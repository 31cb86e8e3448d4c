#include "gwl/loss.hpp"

#include <cmath>
#include <mutex>
#include <string>

#include "gwl/error.hpp"

namespace gwl {
namespace {

void warn_kl_clamp_once() {
  static std::once_flag flag;
  std::call_once(flag, [] {
    log::warn("KL loss: cost entries below 1e-12 clamped to 1e-12");
  });
}

void check_dims(const CostMatrix& cs, const CostMatrix& ct, const Coupling& t) {
  if (cs.rows() != cs.cols() || ct.rows() != ct.cols() ||
      t.rows() != cs.rows() || t.cols() != ct.rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "Cs " + std::to_string(cs.rows()) + "x" +
                    std::to_string(cs.cols()) + ", Ct " +
                    std::to_string(ct.rows()) + "x" + std::to_string(ct.cols()) +
                    ", T " + std::to_string(t.rows()) + "x" +
                    std::to_string(t.cols()));
  }
}

}  // namespace

double LossSpec::clamp(double x) const {
  return kind_ == LossKind::kKl ? std::max(x, kKlFloor) : x;
}

Matrix LossSpec::clamp(const Matrix& m) const {
  if (kind_ != LossKind::kKl) return m;
  if ((m.array() < kKlFloor).any()) warn_kl_clamp_once();
  return m.cwiseMax(kKlFloor);
}

double LossSpec::operator()(double a, double b) const {
  if (kind_ == LossKind::kMse) return (a - b) * (a - b);
  a = clamp(a);
  b = clamp(b);
  return a * std::log(a / b) - a + b;
}

double LossSpec::derivative_first(double a, double b) const {
  if (kind_ == LossKind::kMse) return 2.0 * (a - b);
  // The clamp is flat below the floor.
  if (a < kKlFloor) return 0.0;
  return std::log(a / clamp(b));
}

double LossSpec::f1(double a) const {
  if (kind_ == LossKind::kMse) return a * a;
  a = clamp(a);
  return a * std::log(a) - a;
}

double LossSpec::f2(double b) const {
  return kind_ == LossKind::kMse ? b * b : clamp(b);
}

double LossSpec::h1(double a) const { return clamp(a); }

double LossSpec::h2(double b) const {
  return kind_ == LossKind::kMse ? 2.0 * b : std::log(clamp(b));
}

std::string_view to_string(LossKind kind) {
  return kind == LossKind::kMse ? "mse" : "kl";
}

LossKind parse_loss_kind(std::string_view name) {
  if (name == "mse") return LossKind::kMse;
  if (name == "kl") return LossKind::kKl;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown loss '" + std::string(name) + "'");
}

double mean_elementwise_loss(const Matrix& a, const Matrix& b,
                             const LossSpec& loss) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "elementwise loss operands");
  }
  if (a.size() == 0) return 0.0;
  double total = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) total += loss(a(i, j), b(i, j));
  }
  return total / static_cast<double>(a.size());
}

CostMatrix loss_tensor_product(const CostMatrix& cs, const CostMatrix& ct,
                               const Coupling& t, const NodeDistribution& mu_s,
                               const NodeDistribution& mu_t,
                               const LossSpec& loss) {
  check_dims(cs, ct, t);
  if (mu_s.size() != cs.rows() || mu_t.size() != ct.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "marginal length");
  }
  const Matrix a = loss.clamp(cs);
  const Matrix b = loss.clamp(ct);
  auto apply = [](const Matrix& m, auto&& fn) {
    return m.unaryExpr([&](double x) { return fn(x); }).eval();
  };
  const Matrix f1 = apply(a, [&](double x) { return loss.f1(x); });
  const Matrix f2 = apply(b, [&](double x) { return loss.f2(x); });
  const Matrix h1 = apply(a, [&](double x) { return loss.h1(x); });
  const Matrix h2 = apply(b, [&](double x) { return loss.h2(x); });

  const Vector row_term = f1 * mu_s;  // sum_k f1(Cs_ik) mu_s_k
  const Vector col_term = f2 * mu_t;  // sum_l f2(Ct_jl) mu_t_l
  CostMatrix out = -(h1 * t * h2.transpose());
  out.colwise() += row_term;
  out.rowwise() += col_term.transpose();
  return out;
}

double gw_discrepancy(const CostMatrix& cs, const CostMatrix& ct,
                      const Coupling& t, const LossSpec& loss) {
  check_dims(cs, ct, t);
  const Vector mu_s = t.rowwise().sum();
  const Vector mu_t = t.colwise().sum().transpose();
  return loss_tensor_product(cs, ct, t, mu_s, mu_t, loss).cwiseProduct(t).sum();
}

}  // namespace gwl
