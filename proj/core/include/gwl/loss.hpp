#pragma once

#include <string_view>

#include "gwl/types.hpp"

namespace gwl {

enum class LossKind { kMse, kKl };

// Elementwise loss written as L(a, b) = f1(a) + f2(b) - h1(a) * h2(b), which
// lets the GW loss matrix be computed with two matrix products instead of a
// quadruple sum.
//
//   MSE: L(a, b) = (a - b)^2
//   KL:  L(a, b) = a log(a / b) - a + b
//
// KL arguments are clamped below at kKlFloor.
class LossSpec {
 public:
  static constexpr double kKlFloor = 1e-12;

  constexpr LossSpec() = default;
  constexpr explicit LossSpec(LossKind kind) : kind_(kind) {}

  static constexpr LossSpec mse() { return LossSpec(LossKind::kMse); }
  static constexpr LossSpec kl() { return LossSpec(LossKind::kKl); }

  constexpr LossKind kind() const { return kind_; }

  double operator()(double a, double b) const;
  // dL/da, used for the embedding regularizer.
  double derivative_first(double a, double b) const;

  double f1(double a) const;
  double f2(double b) const;
  double h1(double a) const;
  double h2(double b) const;

  // Applies the argument clamp for KL; identity for MSE.
  double clamp(double x) const;
  Matrix clamp(const Matrix& m) const;

  friend constexpr bool operator==(LossSpec, LossSpec) = default;

 private:
  LossKind kind_ = LossKind::kMse;
};

std::string_view to_string(LossKind kind);
LossKind parse_loss_kind(std::string_view name);

// Mean over entries of L(a_ij, b_ij).
double mean_elementwise_loss(const Matrix& a, const Matrix& b,
                             const LossSpec& loss);

// Loss matrix L(Cs, Ct, T) with entries
//   L_ij = sum_{k,l} L(Cs_ik, Ct_jl) T_kl
// evaluated as f1(Cs) mu_s 1^T + 1 mu_t^T f2(Ct)^T - h1(Cs) T h2(Ct)^T.
// mu_s and mu_t must be the marginals of T for the identity to hold.
CostMatrix loss_tensor_product(const CostMatrix& cs, const CostMatrix& ct,
                               const Coupling& t, const NodeDistribution& mu_s,
                               const NodeDistribution& mu_t,
                               const LossSpec& loss);

// <L(Cs, Ct, T), T>, using T's own marginals.
double gw_discrepancy(const CostMatrix& cs, const CostMatrix& ct,
                      const Coupling& t, const LossSpec& loss);

}  // namespace gwl
