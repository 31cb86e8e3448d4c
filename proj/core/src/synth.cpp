#include "gwl/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gwl/error.hpp"

namespace gwl {
namespace {

using PairSet = std::set<std::pair<Index, Index>>;

std::pair<Index, Index> key(Index a, Index b) {
  return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

Index ceil_percent(double q_percent, Index count) {
  return static_cast<Index>(
      std::ceil(q_percent * static_cast<double>(count) / 100.0));
}

// Samples an index with probability proportional to weights[i].
Index sample_weighted(const std::vector<double>& weights, Index limit, Rng& rng) {
  std::discrete_distribution<Index> dist(weights.begin(), weights.begin() + limit);
  return dist(rng);
}

}  // namespace

std::string_view to_string(SynthFamily family) {
  return family == SynthFamily::kKnn ? "knn" : "ba";
}

SynthFamily parse_synth_family(std::string_view name) {
  if (name == "knn") return SynthFamily::kKnn;
  if (name == "ba") return SynthFamily::kBa;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown graph family '" + std::string(name) + "'");
}

double draw_interaction_count(Rng& rng) {
  std::poisson_distribution<int> dist(kInteractionRate);
  int w = 0;
  while (w == 0) w = dist(rng);
  return static_cast<double>(w);
}

std::vector<Edge> knn_selections(Index n, Rng& rng) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "synthetic graphs need n >= 2");
  std::poisson_distribution<Index> degree(0.1 * static_cast<double>(n));
  std::vector<Edge> edges;
  std::vector<Index> others(n - 1);
  for (Index i = 0; i < n; ++i) {
    const Index k = std::min(degree(rng), n - 1);
    // Candidates V \ {i}, partially shuffled to pick k distinct partners.
    for (Index j = 0, c = 0; j < n; ++j) {
      if (j != i) others[c++] = j;
    }
    for (Index s = 0; s < k; ++s) {
      std::uniform_int_distribution<Index> pick(s, n - 2);
      std::swap(others[s], others[pick(rng)]);
      edges.push_back({i, others[s], draw_interaction_count(rng)});
    }
  }
  return edges;
}

Graph gen_knn_source(Index n, Rng& rng) { return Graph(n, knn_selections(n, rng)); }

Index ba_attachment_count(Index n) {
  const auto m = static_cast<Index>(std::llround(0.05 * static_cast<double>(n)));
  return std::max<Index>(1, m);
}

Graph gen_ba_source(Index n, Rng& rng) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "synthetic graphs need n >= 2");
  const Index m = ba_attachment_count(n);
  const Index seed_nodes = std::min(n, m + 1);
  std::vector<Edge> edges;
  // Every endpoint occurrence, so a uniform pick is degree-proportional.
  std::vector<Index> endpoints;
  for (Index i = 0; i < seed_nodes; ++i) {
    for (Index j = i + 1; j < seed_nodes; ++j) {
      edges.push_back({i, j, draw_interaction_count(rng)});
      endpoints.push_back(i);
      endpoints.push_back(j);
    }
  }
  for (Index v = seed_nodes; v < n; ++v) {
    std::set<Index> chosen;
    std::uniform_int_distribution<std::size_t> pick(0, endpoints.size() - 1);
    while (chosen.size() < std::min(m, v)) chosen.insert(endpoints[pick(rng)]);
    for (Index u : chosen) {
      edges.push_back({u, v, draw_interaction_count(rng)});
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }
  return Graph(n, std::move(edges));
}

Graph generate_source(SynthFamily family, Index n, Rng& rng) {
  return family == SynthFamily::kKnn ? gen_knn_source(n, rng) : gen_ba_source(n, rng);
}

NoisyPair inject_noise(const Graph& source, double q_percent, SynthFamily family,
                       Rng& rng) {
  if (!(q_percent >= 0.0) || !std::isfinite(q_percent)) {
    throw Error(ErrorCode::kInvalidArgument, "noise level must be >= 0");
  }
  const Index ns = source.node_count();
  const Index extra_nodes = ceil_percent(q_percent, ns);
  const Index nt = ns + extra_nodes;
  Index budget = ceil_percent(q_percent, source.edge_count());

  std::vector<Edge> edges(source.edges().begin(), source.edges().end());
  PairSet present;
  std::vector<double> degree(nt, 0.0);
  for (const Edge& e : edges) {
    present.insert(key(e.src, e.dst));
    degree[e.src] += 1.0;
    degree[e.dst] += 1.0;
  }
  const Index max_pairs = nt * (nt - 1) / 2;
  budget = std::min(budget, max_pairs - std::min(max_pairs, present.size()));

  auto add = [&](Index u, Index v) {
    edges.push_back({u, v, draw_interaction_count(rng)});
    present.insert(key(u, v));
    degree[u] += 1.0;
    degree[v] += 1.0;
    --budget;
  };
  // Preferential picks use degree + 1 so isolated nodes stay reachable.
  auto partner = [&](Index limit) -> Index {
    if (family == SynthFamily::kKnn) {
      return std::uniform_int_distribution<Index>(0, limit - 1)(rng);
    }
    std::vector<double> w(degree.begin(), degree.begin() + limit);
    for (double& x : w) x += 1.0;
    return sample_weighted(w, limit, rng);
  };

  for (Index v = ns; v < nt && budget > 0; ++v) add(partner(v), v);

  std::uniform_int_distribution<Index> any(0, nt - 1);
  while (budget > 0) {
    const Index u = any(rng);
    const Index v = partner(nt);
    if (u == v || present.count(key(u, v))) continue;
    add(u, v);
  }

  std::vector<std::string> labels;
  labels.reserve(nt);
  for (Index i = 0; i < ns; ++i) labels.push_back(source.label(i));
  for (Index i = ns; i < nt; ++i) labels.push_back("noise" + std::to_string(i));

  NoisyPair out{Graph(nt, std::move(edges), source.directed(), std::move(labels)), {}};
  for (Index i = 0; i < ns; ++i) out.truth.emplace(i, i);
  return out;
}

}  // namespace gwl
