#include "gwl/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gwl/error.hpp"

namespace gwl {
namespace {

Vector column_norms(const EmbeddingMatrix& x, const KernelSpec& kernel) {
  Vector norms = x.colwise().norm().transpose();
  if (kernel.kind == KernelKind::kCosine) {
    for (Eigen::Index i = 0; i < norms.size(); ++i) {
      if (!(norms(i) >= kMinCosineNorm)) {
        throw Error(ErrorCode::kZeroVector,
                    "embedding column " + std::to_string(i) +
                        " has norm below 1e-12");
      }
    }
  }
  return norms;
}

void check_kernel(const KernelSpec& kernel) {
  if (!(kernel.sigma > 0.0) || !std::isfinite(kernel.sigma)) {
    throw Error(ErrorCode::kInvalidArgument, "kernel sigma must be positive");
  }
}

}  // namespace

double KernelSpec::operator()(const Vector& x, const Vector& y) const {
  if (kind == KernelKind::kCosine) {
    const double nx = x.norm();
    const double ny = y.norm();
    if (!(nx >= kMinCosineNorm) || !(ny >= kMinCosineNorm)) {
      throw Error(ErrorCode::kZeroVector, "cosine kernel on a zero vector");
    }
    const double c = std::clamp(x.dot(y) / (nx * ny), -1.0, 1.0);
    return 1.0 - std::exp(-sigma * (1.0 - c));
  }
  return 1.0 - std::exp(-(x - y).squaredNorm() / (sigma * sigma));
}

std::string_view to_string(KernelKind kind) {
  return kind == KernelKind::kCosine ? "cosine" : "rbf";
}

KernelKind parse_kernel_kind(std::string_view name) {
  if (name == "cosine") return KernelKind::kCosine;
  if (name == "rbf") return KernelKind::kRbf;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown kernel '" + std::string(name) + "'");
}

CostMatrix kernel_matrix(const EmbeddingMatrix& xa, const EmbeddingMatrix& xb,
                         const KernelSpec& kernel) {
  check_kernel(kernel);
  if (xa.rows() != xb.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "embedding dimensions differ");
  }
  const Eigen::Index na = xa.cols();
  const Eigen::Index nb = xb.cols();
  CostMatrix k(na, nb);
  if (kernel.kind == KernelKind::kCosine) {
    const Vector norm_a = column_norms(xa, kernel);
    const Vector norm_b = column_norms(xb, kernel);
    const Matrix dots = xa.transpose() * xb;
    for (Eigen::Index j = 0; j < nb; ++j) {
      for (Eigen::Index i = 0; i < na; ++i) {
        const double c =
            std::clamp(dots(i, j) / (norm_a(i) * norm_b(j)), -1.0, 1.0);
        k(i, j) = -std::expm1(-kernel.sigma * (1.0 - c));
      }
    }
  } else {
    const double inv_s2 = 1.0 / (kernel.sigma * kernel.sigma);
    for (Eigen::Index j = 0; j < nb; ++j) {
      for (Eigen::Index i = 0; i < na; ++i) {
        k(i, j) = -std::expm1(-(xa.col(i) - xb.col(j)).squaredNorm() * inv_s2);
      }
    }
  }
  return k;
}

CostMatrix kernel_matrix(const EmbeddingMatrix& x, const KernelSpec& kernel) {
  CostMatrix k = kernel_matrix(x, x, kernel);
  // Exact symmetry and zero self-distance.
  for (Eigen::Index j = 0; j < k.cols(); ++j) {
    k(j, j) = 0.0;
    for (Eigen::Index i = 0; i < j; ++i) k(j, i) = k(i, j);
  }
  return k;
}

CostMatrix mixed_distance_matrix(const CostMatrix& data,
                                 const EmbeddingMatrix& x,
                                 const KernelSpec& kernel, double alpha) {
  if (data.rows() != data.cols() || data.rows() != x.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "data distances and embeddings disagree on node count");
  }
  if (alpha == 0.0) return data;
  return (1.0 - alpha) * data + alpha * kernel_matrix(x, kernel);
}

KernelGradient kernel_weighted_gradient(const EmbeddingMatrix& xa,
                                        const EmbeddingMatrix& xb,
                                        const Matrix& weights,
                                        const KernelSpec& kernel) {
  check_kernel(kernel);
  if (xa.rows() != xb.rows() || weights.rows() != xa.cols() ||
      weights.cols() != xb.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "kernel gradient operands");
  }
  KernelGradient g;
  if (kernel.kind == KernelKind::kCosine) {
    const Vector norm_a = column_norms(xa, kernel);
    const Vector norm_b = column_norms(xb, kernel);
    const Matrix ua = xa * norm_a.cwiseInverse().asDiagonal();
    const Matrix ub = xb * norm_b.cwiseInverse().asDiagonal();
    const Matrix cos = ua.transpose() * ub;
    // d kappa / d cos = -sigma exp(-sigma (1 - cos))
    Matrix e(cos.rows(), cos.cols());
    for (Eigen::Index j = 0; j < cos.cols(); ++j) {
      for (Eigen::Index i = 0; i < cos.rows(); ++i) {
        e(i, j) = weights(i, j) * -kernel.sigma *
                  std::exp(-kernel.sigma * (1.0 - cos(i, j)));
      }
    }
    const Vector row_ec = e.cwiseProduct(cos).rowwise().sum();
    const Vector col_ec = e.cwiseProduct(cos).colwise().sum().transpose();
    // d cos(a, b) / d a = (u_b - cos u_a) / |a|
    g.xa = (ub * e.transpose() - ua * row_ec.asDiagonal()) *
           norm_a.cwiseInverse().asDiagonal();
    g.xb = (ua * e - ub * col_ec.asDiagonal()) *
           norm_b.cwiseInverse().asDiagonal();
  } else {
    const double inv_s2 = 1.0 / (kernel.sigma * kernel.sigma);
    Matrix p(xa.cols(), xb.cols());
    for (Eigen::Index j = 0; j < xb.cols(); ++j) {
      for (Eigen::Index i = 0; i < xa.cols(); ++i) {
        const double d2 = (xa.col(i) - xb.col(j)).squaredNorm();
        p(i, j) = weights(i, j) * 2.0 * inv_s2 * std::exp(-d2 * inv_s2);
      }
    }
    // d kappa / d a = 2 (a - b) exp(-|a-b|^2 / s^2) / s^2
    g.xa = xa * p.rowwise().sum().asDiagonal() - xb * p.transpose();
    g.xb = xb * p.colwise().sum().transpose().asDiagonal() - xa * p;
  }
  return g;
}

}  // namespace gwl
