#pragma once

#include <cstddef>

#include <Eigen/Dense>

namespace gwl {

using Index = std::size_t;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Nonnegative dissimilarities. Square for one graph, |Vs| x |Vt| across graphs.
using CostMatrix = Eigen::MatrixXd;
// Transport plan between source rows and target columns.
using Coupling = Eigen::MatrixXd;
// Probability vector over the nodes of one graph.
using NodeDistribution = Eigen::VectorXd;
// D x |V|, one column per node.
using EmbeddingMatrix = Eigen::MatrixXd;

}  // namespace gwl
