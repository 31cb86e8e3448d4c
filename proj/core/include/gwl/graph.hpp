#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "gwl/types.hpp"

namespace gwl {

struct Edge {
  Index src = 0;
  Index dst = 0;
  double weight = 0.0;  // interaction count, > 0

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Weighted interaction graph. Duplicate edges are merged by summing weights;
// in undirected mode (i, j) and (j, i) are the same edge and stored with
// src <= dst. Immutable after construction.
class Graph {
 public:
  Graph() = default;
  Graph(Index node_count, std::vector<Edge> edges, bool directed = false,
        std::vector<std::string> labels = {});

  Index node_count() const noexcept { return node_count_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  Index edge_count() const noexcept { return edges_.size(); }
  bool directed() const noexcept { return directed_; }

  // Original identifiers; defaults to "0", "1", ... when none were given.
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(Index i) const { return labels_.at(i); }
  // Dense index of a label, or -1 when absent.
  std::ptrdiff_t find_label(const std::string& label) const;

  // Dense |V| x |V| matrix of summed weights. Symmetric when undirected.
  Matrix weight_matrix() const;
  // Sum of incident weights; a directed edge counts for both endpoints.
  Vector weighted_degree() const;

 private:
  Index node_count_ = 0;
  std::vector<Edge> edges_;
  bool directed_ = false;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, Index> label_index_;
};

inline constexpr double kDegreeSmoothing = 1e-3;

struct EdgeListOptions {
  bool directed = false;
};

// Parses "src dst weight" lines. Node tokens are re-indexed densely in order
// of first appearance. '#' starts a comment line.
Graph parse_graph(std::istream& in, const EdgeListOptions& options = {});
Graph load_graph(const std::filesystem::path& path,
                 const EdgeListOptions& options = {});
void write_graph(std::ostream& out, const Graph& g);
void save_graph(const std::filesystem::path& path, const Graph& g);

// c_ij = 1 / (w_ij + 1) on edges, 1 elsewhere, 0 on the diagonal.
CostMatrix data_distance_matrix(const Graph& g);

// Weighted degree plus smoothing, normalized to a probability vector.
NodeDistribution node_distribution(const Graph& g,
                                   double smoothing = kDegreeSmoothing);

struct CrossObservation {
  Index source = 0;
  Index target = 0;
  double weight = 0.0;
};

// |Vs| x |Vt|; observed pairs (weights summed) get 1 / (w + 1), others 1.
CostMatrix cross_distance_matrix(std::span<const CrossObservation> observed,
                                 Index source_count, Index target_count);

// Reads "source_label target_label weight" lines, resolving labels against
// the two graphs.
std::vector<CrossObservation> parse_correspondences(std::istream& in,
                                                    const Graph& source,
                                                    const Graph& target);
std::vector<CrossObservation> load_correspondences(
    const std::filesystem::path& path, const Graph& source,
    const Graph& target);

}  // namespace gwl
