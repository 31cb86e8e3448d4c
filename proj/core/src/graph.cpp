#include "gwl/graph.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <utility>

#include "gwl/csv.hpp"
#include "gwl/error.hpp"

namespace gwl {
namespace {

double parse_weight(const std::string& token, std::size_t line_no) {
  double w = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), w);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw Error(ErrorCode::kMalformedLine,
                "line " + std::to_string(line_no) + ": bad weight '" + token + "'");
  }
  if (!(w > 0.0) || !std::isfinite(w)) {
    throw Error(ErrorCode::kNonpositiveWeight,
                "line " + std::to_string(line_no) + ": weight " + token);
  }
  return w;
}

bool skip_line(const std::string& line) {
  auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

// Splits a data line into exactly three tokens.
std::array<std::string, 3> split_triple(const std::string& line,
                                        std::size_t line_no) {
  std::istringstream ss(line);
  std::array<std::string, 3> tok;
  std::string extra;
  if (!(ss >> tok[0] >> tok[1] >> tok[2]) || (ss >> extra)) {
    throw Error(ErrorCode::kMalformedLine,
                "line " + std::to_string(line_no) +
                    ": expected 'src dst weight', got '" + line + "'");
  }
  return tok;
}

}  // namespace

Graph::Graph(Index node_count, std::vector<Edge> edges, bool directed,
             std::vector<std::string> labels)
    : node_count_(node_count), directed_(directed) {
  if (node_count == 0) throw Error(ErrorCode::kEmptyGraph, "graph has no nodes");
  std::map<std::pair<Index, Index>, double> merged;
  for (const Edge& e : edges) {
    if (e.src >= node_count || e.dst >= node_count) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "edge (" + std::to_string(e.src) + ", " +
                      std::to_string(e.dst) + ") outside node range " +
                      std::to_string(node_count));
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw Error(ErrorCode::kNonpositiveWeight,
                  "edge weight " + std::to_string(e.weight));
    }
    auto key = std::make_pair(e.src, e.dst);
    if (!directed && key.first > key.second) std::swap(key.first, key.second);
    merged[key] += e.weight;
  }
  edges_.reserve(merged.size());
  for (const auto& [key, w] : merged) edges_.push_back({key.first, key.second, w});

  if (labels.empty()) {
    labels.reserve(node_count);
    for (Index i = 0; i < node_count; ++i) labels.push_back(std::to_string(i));
  }
  if (labels.size() != node_count) {
    throw Error(ErrorCode::kDimensionMismatch, "label count != node count");
  }
  labels_ = std::move(labels);
  for (Index i = 0; i < node_count_; ++i) {
    if (!label_index_.emplace(labels_[i], i).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate label " + labels_[i]);
    }
  }
}

std::ptrdiff_t Graph::find_label(const std::string& label) const {
  auto it = label_index_.find(label);
  return it == label_index_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

Matrix Graph::weight_matrix() const {
  Matrix w = Matrix::Zero(node_count_, node_count_);
  for (const Edge& e : edges_) {
    w(e.src, e.dst) += e.weight;
    if (!directed_ && e.src != e.dst) w(e.dst, e.src) += e.weight;
  }
  return w;
}

Vector Graph::weighted_degree() const {
  Vector deg = Vector::Zero(node_count_);
  for (const Edge& e : edges_) {
    deg(e.src) += e.weight;
    if (e.src != e.dst) deg(e.dst) += e.weight;
  }
  return deg;
}

Graph parse_graph(std::istream& in, const EdgeListOptions& options) {
  std::vector<std::string> labels;
  std::unordered_map<std::string, Index> index;
  std::vector<Edge> edges;
  auto node = [&](const std::string& token) {
    auto [it, inserted] = index.emplace(token, labels.size());
    if (inserted) labels.push_back(token);
    return it->second;
  };
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_line(line)) continue;
    auto tok = split_triple(line, line_no);
    double w = parse_weight(tok[2], line_no);
    Index s = node(tok[0]);
    Index d = node(tok[1]);
    edges.push_back({s, d, w});
  }
  if (labels.empty()) throw Error(ErrorCode::kEmptyGraph, "no edges in input");
  const Index n = labels.size();
  return Graph(n, std::move(edges), options.directed, std::move(labels));
}

Graph load_graph(const std::filesystem::path& path,
                 const EdgeListOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  try {
    return parse_graph(in, options);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

void write_graph(std::ostream& out, const Graph& g) {
  for (const Edge& e : g.edges()) {
    out << g.label(e.src) << ' ' << g.label(e.dst) << ' '
        << format_double(e.weight) << '\n';
  }
}

void save_graph(const std::filesystem::path& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  write_graph(out, g);
}

CostMatrix data_distance_matrix(const Graph& g) {
  const Index n = g.node_count();
  CostMatrix c = CostMatrix::Ones(n, n);
  Matrix w = g.weight_matrix();
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (w(i, j) > 0.0) c(i, j) = 1.0 / (w(i, j) + 1.0);
    }
  }
  c.diagonal().setZero();
  return c;
}

NodeDistribution node_distribution(const Graph& g, double smoothing) {
  if (smoothing < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "negative degree smoothing");
  }
  Vector mu = g.weighted_degree().array() + smoothing;
  double total = mu.sum();
  if (!(total > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "graph has no weight and zero smoothing");
  }
  return mu / total;
}

CostMatrix cross_distance_matrix(std::span<const CrossObservation> observed,
                                 Index source_count, Index target_count) {
  Matrix w = Matrix::Zero(source_count, target_count);
  for (const auto& o : observed) {
    if (o.source >= source_count || o.target >= target_count) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "cross observation (" + std::to_string(o.source) + ", " +
                      std::to_string(o.target) + ")");
    }
    if (!(o.weight > 0.0) || !std::isfinite(o.weight)) {
      throw Error(ErrorCode::kNonpositiveWeight, "cross observation weight");
    }
    w(o.source, o.target) += o.weight;
  }
  CostMatrix c = CostMatrix::Ones(source_count, target_count);
  for (Index i = 0; i < source_count; ++i) {
    for (Index j = 0; j < target_count; ++j) {
      if (w(i, j) > 0.0) c(i, j) = 1.0 / (w(i, j) + 1.0);
    }
  }
  return c;
}

std::vector<CrossObservation> parse_correspondences(std::istream& in,
                                                    const Graph& source,
                                                    const Graph& target) {
  std::vector<CrossObservation> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_line(line)) continue;
    auto tok = split_triple(line, line_no);
    double w = parse_weight(tok[2], line_no);
    auto s = source.find_label(tok[0]);
    auto t = target.find_label(tok[1]);
    if (s < 0 || t < 0) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "line " + std::to_string(line_no) + ": unknown node '" +
                      (s < 0 ? tok[0] : tok[1]) + "'");
    }
    out.push_back({static_cast<Index>(s), static_cast<Index>(t), w});
  }
  return out;
}

std::vector<CrossObservation> load_correspondences(
    const std::filesystem::path& path, const Graph& source,
    const Graph& target) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  try {
    return parse_correspondences(in, source, target);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

}  // namespace gwl
