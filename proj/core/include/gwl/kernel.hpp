#pragma once

#include <string_view>

#include "gwl/types.hpp"

namespace gwl {

enum class KernelKind { kCosine, kRbf };

// Embedding distances in [0, 1):
//   cosine: 1 - exp(-sigma (1 - cos(x, y)))
//   rbf:    1 - exp(-|x - y|^2 / sigma^2)
struct KernelSpec {
  KernelKind kind = KernelKind::kCosine;
  double sigma = 10.0;

  static KernelSpec cosine(double sigma = 10.0) {
    return {KernelKind::kCosine, sigma};
  }
  // The usual choice is sigma = D.
  static KernelSpec rbf(double sigma) { return {KernelKind::kRbf, sigma}; }

  double operator()(const Vector& x, const Vector& y) const;
};

std::string_view to_string(KernelKind kind);
KernelKind parse_kernel_kind(std::string_view name);

// Columns below this norm are rejected by the cosine kernel.
inline constexpr double kMinCosineNorm = 1e-12;

// |Va| x |Vb| matrix of kernel distances between the columns of xa and xb.
// Throws Error(kZeroVector) for the cosine kernel on a (near) zero column.
CostMatrix kernel_matrix(const EmbeddingMatrix& xa, const EmbeddingMatrix& xb,
                         const KernelSpec& kernel);

// Within-graph distances K(X, X): exactly symmetric with a zero diagonal.
CostMatrix kernel_matrix(const EmbeddingMatrix& x, const KernelSpec& kernel);

// (1 - alpha) C_data + alpha K(X, X).
CostMatrix mixed_distance_matrix(const CostMatrix& data,
                                 const EmbeddingMatrix& x,
                                 const KernelSpec& kernel, double alpha);

struct KernelGradient {
  EmbeddingMatrix xa;
  EmbeddingMatrix xb;
};

// Gradient of sum_ij weights_ij * kappa(xa_i, xb_j) with respect to both
// arguments. For a within-graph term (xa == xb) add the two parts.
KernelGradient kernel_weighted_gradient(const EmbeddingMatrix& xa,
                                        const EmbeddingMatrix& xb,
                                        const Matrix& weights,
                                        const KernelSpec& kernel);

}  // namespace gwl
