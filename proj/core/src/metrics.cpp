#include "gwl/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "gwl/error.hpp"

namespace gwl {

double node_correctness(const Matching& matching, const GroundTruth& truth) {
  if (matching.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "node correctness of an empty matching");
  }
  std::size_t hits = 0;
  for (const auto& [s, t] : matching) {
    auto it = truth.find(s);
    if (it != truth.end() && it->second == t) ++hits;
  }
  return 100.0 * static_cast<double>(hits) / static_cast<double>(matching.size());
}

TopLScores topl_metrics(const std::vector<std::vector<Index>>& recommended,
                        const std::vector<std::vector<Index>>& truth,
                        std::size_t top_l) {
  if (recommended.size() != truth.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "recommendation and truth instance counts differ");
  }
  if (top_l == 0) throw Error(ErrorCode::kInvalidArgument, "L must be >= 1");
  if (recommended.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no instances to score");
  }
  TopLScores sum;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i].empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "instance " + std::to_string(i) + " has an empty truth set");
    }
    const std::set<Index> relevant(truth[i].begin(), truth[i].end());
    const std::size_t shown = std::min(top_l, recommended[i].size());
    std::set<Index> listed(recommended[i].begin(), recommended[i].begin() + shown);
    std::size_t hits = 0;
    for (Index j : listed) hits += relevant.count(j);
    const double p = listed.empty() ? 0.0
                                    : static_cast<double>(hits) /
                                          static_cast<double>(listed.size());
    const double r = static_cast<double>(hits) / static_cast<double>(relevant.size());
    sum.precision += p;
    sum.recall += r;
    sum.f1 += (p + r) > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
  }
  const double n = static_cast<double>(truth.size());
  return {sum.precision / n, sum.recall / n, sum.f1 / n};
}

std::vector<std::vector<Index>> ranked_recommendations(const Matrix& scores,
                                                       std::size_t top_l,
                                                       RankMode mode) {
  if (top_l == 0) throw Error(ErrorCode::kInvalidArgument, "L must be >= 1");
  const std::size_t cols = static_cast<std::size_t>(scores.cols());
  const std::size_t take = std::min(top_l, cols);
  std::vector<std::vector<Index>> out(scores.rows());
  std::vector<Index> order(cols);
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    std::iota(order.begin(), order.end(), Index{0});
    auto better = [&](Index a, Index b) {
      const double va = scores(i, a);
      const double vb = scores(i, b);
      if (va != vb) {
        return mode == RankMode::kTransportDescending ? va > vb : va < vb;
      }
      return a < b;
    };
    std::partial_sort(order.begin(), order.begin() + take, order.end(), better);
    out[i].assign(order.begin(), order.begin() + take);
  }
  return out;
}

TrialStats confidence_interval(std::span<const double> values) {
  if (values.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "confidence interval of no values");
  }
  TrialStats stats;
  stats.values.assign(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  stats.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() == 1) {
    log::warn("confidence interval from a single trial; half-width is 0");
    return stats;
  }
  double ss = 0.0;
  for (double v : values) ss += (v - stats.mean) * (v - stats.mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  stats.half_width = 1.96 * sd / std::sqrt(n);
  return stats;
}

}  // namespace gwl
