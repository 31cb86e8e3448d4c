#pragma once

#include <optional>

#include "gwl/types.hpp"

namespace gwl {

struct SinkhornOptions {
  int iterations = 1;  // J
  // Redo the call with log-sum-exp updates once a scaling leaves
  // [kScalingFloor, kScalingCeiling] or turns non-finite.
  bool log_domain_fallback = true;
};

inline constexpr double kScalingCeiling = 1e150;
inline constexpr double kScalingFloor = 1e-150;

struct SinkhornResult {
  Coupling plan;
  Vector a;  // row scaling, reusable as a warm start
  Vector b;  // column scaling
  double marginal_violation = 0.0;
  bool used_log_domain = false;
};

// Scales the kernel G = exp(-C / gamma) (.) prior by alternating
//   b = mu_t / (G^T a),  a = mu_s / (G b)
// for J rounds and returns diag(a) G diag(b). Entries where the prior is zero
// stay zero. With prior = 1 this is plain entropic OT; with prior = T_prev it
// is one proximal (KL) step. `a_init` defaults to mu_s.
//
// Since a is updated last, the row marginal of the result is exact up to
// rounding after any J >= 1.
//
// Throws Error(kNonFinite) when the scaling cannot be carried out.
SinkhornResult sinkhorn(const CostMatrix& cost, const NodeDistribution& mu_s,
                        const NodeDistribution& mu_t, double gamma,
                        const Coupling& prior,
                        const SinkhornOptions& options = {},
                        const std::optional<Vector>& a_init = std::nullopt);

// max(|T 1 - mu_s|_inf, |T^T 1 - mu_t|_inf)
double marginal_violation(const Coupling& t, const NodeDistribution& mu_s,
                          const NodeDistribution& mu_t);

// -sum T_ij log T_ij over positive entries.
double coupling_entropy(const Coupling& t);

}  // namespace gwl
