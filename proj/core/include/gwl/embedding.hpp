#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gwl/kernel.hpp"
#include "gwl/loss.hpp"
#include "gwl/rng.hpp"
#include "gwl/types.hpp"

namespace gwl {

// Fixed inputs of the embedding sub-problem
//   alpha <K(Xs, Xt), T_hat>
//     + beta [ L(K(Xs, Xs), Cs) + L(K(Xt, Xt), Ct) + L(K(Xs, Xt), Cst) ]
// where L on matrices is the mean elementwise loss and the Cst term is
// present only when cross-graph observations exist.
struct EmbeddingProblem {
  CostMatrix cs;
  CostMatrix ct;
  std::optional<CostMatrix> c_st;
  Coupling t_hat;
  double alpha = 0.0;
  double beta = 10.0;
  KernelSpec kernel;
  LossSpec loss = LossSpec::mse();

  void validate(const EmbeddingMatrix& xs, const EmbeddingMatrix& xt) const;
};

double embedding_objective(const EmbeddingProblem& problem,
                           const EmbeddingMatrix& xs,
                           const EmbeddingMatrix& xt);

struct EmbeddingGradient {
  EmbeddingMatrix xs;
  EmbeddingMatrix xt;
};

EmbeddingGradient embedding_gradient(const EmbeddingProblem& problem,
                                     const EmbeddingMatrix& xs,
                                     const EmbeddingMatrix& xt);

// Objective and gradient restricted to a node batch. The transport term is
// rescaled by (|Vs| |Vt|) / (|Bs| |Bt|) so that its expectation matches the
// full term; regularizers are means over the induced sub-blocks. Gradient
// columns outside the batch are zero.
double batch_objective(const EmbeddingProblem& problem,
                       const EmbeddingMatrix& xs, const EmbeddingMatrix& xt,
                       std::span<const Index> source_batch,
                       std::span<const Index> target_batch,
                       EmbeddingGradient* gradient = nullptr);

struct EmbedOptConfig {
  double learning_rate = 1e-3;
  int epochs = 5;
  int batch_size = 100;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;
  // Abort when the objective exceeds this multiple of its starting value.
  double divergence_factor = 10.0;
};

struct EmbeddingUpdate {
  double objective_before = 0.0;
  double objective_after = 0.0;
  int steps = 0;
  bool diverged = false;  // embeddings were left unchanged
};

// Minibatch Adam on the embedding sub-problem. Each epoch shuffles both node
// sets and splits them into the same number of batches of at most
// batch_size nodes. On divergence the inputs are restored and
// `diverged` is set.
EmbeddingUpdate update_embeddings(EmbeddingMatrix& xs, EmbeddingMatrix& xt,
                                  const EmbeddingProblem& problem,
                                  const EmbedOptConfig& config, Rng& rng);

// Uniform entries in [-1/sqrt(D), 1/sqrt(D)].
EmbeddingMatrix init_embeddings(int dim, Index node_count, Rng& rng);

// One row per node: "label,x_1,...,x_D".
void write_embeddings_csv(std::ostream& out, const EmbeddingMatrix& x,
                          const std::vector<std::string>& labels);
// Returns the D x |V| matrix; labels (if requested) in row order.
EmbeddingMatrix read_embeddings_csv(std::istream& in,
                                    std::vector<std::string>* labels = nullptr);

}  // namespace gwl
