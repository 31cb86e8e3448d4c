#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "gwl/types.hpp"

namespace gwl {

// (source node, target node) pairs.
using Matching = std::vector<std::pair<Index, Index>>;

// True correspondences, source node -> target node.
using GroundTruth = std::map<Index, Index>;

// 100 * |P n P_real| / |P|. Throws on an empty matching.
double node_correctness(const Matching& matching, const GroundTruth& truth);

struct TopLScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Per-instance precision, recall and F1 of the first L recommendations,
// averaged over instances. F1_i is 0 when P_i + R_i = 0. Throws when an
// instance has an empty truth set.
TopLScores topl_metrics(const std::vector<std::vector<Index>>& recommended,
                        const std::vector<std::vector<Index>>& truth,
                        std::size_t top_l);

enum class RankMode {
  kTransportDescending,  // largest coupling mass first
  kDistanceAscending,    // smallest distance first
};

// Top-L column indices of every row; ties go to the smaller index. L larger
// than the column count is truncated.
std::vector<std::vector<Index>> ranked_recommendations(const Matrix& scores,
                                                       std::size_t top_l,
                                                       RankMode mode);

struct TrialStats {
  std::vector<double> values;
  double mean = 0.0;
  double half_width = 0.0;  // 95% normal-approximation half-width

  std::size_t count() const { return values.size(); }
};

// mean +- 1.96 s / sqrt(n) with the sample standard deviation s.
TrialStats confidence_interval(std::span<const double> values);

}  // namespace gwl
