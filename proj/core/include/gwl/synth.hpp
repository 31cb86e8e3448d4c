#pragma once

#include <string_view>
#include <vector>

#include "gwl/graph.hpp"
#include "gwl/metrics.hpp"
#include "gwl/rng.hpp"

namespace gwl {

enum class SynthFamily { kKnn, kBa };

std::string_view to_string(SynthFamily family);
SynthFamily parse_synth_family(std::string_view name);

inline constexpr double kInteractionRate = 10.0;

// Poisson(10) interaction count conditioned on being positive.
double draw_interaction_count(Rng& rng);

// Every node picks K ~ Poisson(0.1 n) distinct partners (K capped at n - 1);
// each picked pair gets a positive Poisson(10) weight. Returns the raw picks
// in node order.
std::vector<Edge> knn_selections(Index n, Rng& rng);

// Union of knn_selections as an undirected graph, weights of pairs picked
// from both ends summed.
Graph gen_knn_source(Index n, Rng& rng);

// Preferential attachment with max(1, round(0.05 n)) edges per new node,
// seeded by a clique of that many plus one nodes.
Graph gen_ba_source(Index n, Rng& rng);

Index ba_attachment_count(Index n);

struct NoisyPair {
  Graph target;
  GroundTruth truth;  // identity on the original nodes
};

// Appends ceil(q% |Vs|) nodes and ceil(q% |Es|) new edges. Each new node is
// first attached to one node; remaining edges join uniform random pairs (KNN)
// or a uniform node and a degree-proportional node (BA).
NoisyPair inject_noise(const Graph& source, double q_percent,
                       SynthFamily family, Rng& rng);

Graph generate_source(SynthFamily family, Index n, Rng& rng);

}  // namespace gwl
