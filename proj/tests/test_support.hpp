#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "qlp/classical.hpp"
#include "qlp/graph.hpp"
#include "qlp/random.hpp"

namespace qlp::test {

inline Graph path_graph(NodeId n) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return Graph::from_edges(n, edges);
}

inline Graph cycle_graph(NodeId n) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
  return Graph::from_edges(n, edges);
}

// node 0 is the hub
inline Graph star_graph(NodeId leaves) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return Graph::from_edges(leaves + 1, edges);
}

inline Graph complete_graph(NodeId n) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return Graph::from_edges(n, edges);
}

// Test-local Bernoulli edge sampler, independent of the library generators.
inline std::vector<std::pair<NodeId, NodeId>> random_edges(RandomStream& rng,
                                                           NodeId n,
                                                           double p) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j)
      if (rng.next_double() < p) edges.emplace_back(i, j);
  return edges;
}

inline Graph random_graph(RandomStream& rng, NodeId n, double p) {
  return Graph::from_edges(n, random_edges(rng, n, p));
}

inline CountMatrix dense_adjacency(const Graph& g) {
  CountMatrix a = CountMatrix::Zero(g.node_count(), g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v)
    for (NodeId u : g.neighbours(v)) a(v, u) = 1;
  return a;
}

// Independent oracle: dense matrix power by repeated multiplication.
inline CountMatrix dense_power(const Graph& g, int order) {
  CountMatrix a = dense_adjacency(g);
  CountMatrix result = a;
  for (int k = 1; k < order; ++k) result = (result * a).eval();
  return result;
}

inline double tv_distance(std::span<const double> p, std::span<const double> q) {
  double tv = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) tv += std::abs(p[i] - q[i]);
  return tv / 2.0;
}

// Upper chi-squared critical value via the Wilson-Hilferty approximation.
inline double chi_squared_critical(int dof, double z_upper) {
  const double d = static_cast<double>(dof);
  const double term = 1.0 - 2.0 / (9.0 * d) + z_upper * std::sqrt(2.0 / (9.0 * d));
  return d * term * term * term;
}

}  // namespace qlp::test
