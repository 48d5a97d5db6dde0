#include "qlp/generators.hpp"

#include <cmath>
#include <numbers>
#include <unordered_set>
#include <utility>
#include <vector>

namespace qlp {

Graph gen_er(NodeId node_count, double k_av, RandomStream& rng) {
  if (node_count < 2) throw ParameterError("er: need at least 2 nodes");
  if (!(k_av > 0.0) || !(k_av < node_count - 1))
    throw ParameterError("er: k_av must lie in (0, N-1)");
  const double p = k_av / static_cast<double>(node_count - 1);
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(static_cast<std::size_t>(0.6 * k_av * node_count));
  for (NodeId i = 0; i < node_count; ++i)
    for (NodeId j = i + 1; j < node_count; ++j)
      if (rng.next_double() < p) edges.emplace_back(i, j);
  return Graph::from_edges(node_count, edges);
}

Graph gen_ba(NodeId node_count, double k_av, RandomStream& rng) {
  const int m = static_cast<int>(std::lround(k_av / 2.0));
  if (m < 1) throw ParameterError("ba: round(k_av/2) must be >= 1");
  if (node_count <= m)
    throw ParameterError("ba: node count must exceed m = " +
                         std::to_string(m));

  std::vector<std::pair<NodeId, NodeId>> edges;
  // one entry per edge endpoint; sampling an index uniformly is sampling a
  // node proportionally to its degree
  std::vector<NodeId> endpoints;
  const NodeId seed_size = std::min<NodeId>(m + 1, node_count);
  for (NodeId i = 0; i < seed_size; ++i)
    for (NodeId j = i + 1; j < seed_size; ++j) {
      edges.emplace_back(i, j);
      endpoints.push_back(i);
      endpoints.push_back(j);
    }

  std::unordered_set<NodeId> chosen;
  for (NodeId v = seed_size; v < node_count; ++v) {
    chosen.clear();
    while (std::ssize(chosen) < m) {
      chosen.insert(endpoints[static_cast<std::size_t>(
          rng.next_index(static_cast<std::int64_t>(endpoints.size())))]);
    }
    for (NodeId u : chosen) {
      edges.emplace_back(v, u);
      endpoints.push_back(v);
      endpoints.push_back(u);
    }
  }
  return Graph::from_edges(node_count, edges);
}

Graph gen_rgg(NodeId node_count, double k_av, RandomStream& rng) {
  if (node_count < 2) throw ParameterError("rgg: need at least 2 nodes");
  if (!(k_av > 0.0) || !(k_av < node_count - 1))
    throw ParameterError("rgg: k_av must lie in (0, N-1)");
  const double r =
      std::sqrt(k_av / (std::numbers::pi * static_cast<double>(node_count - 1)));
  if (r >= 0.5)
    throw ParameterError(
        "rgg: requested density needs connection radius >= 1/2 on the torus");

  std::vector<double> x(static_cast<std::size_t>(node_count));
  std::vector<double> y(static_cast<std::size_t>(node_count));
  for (NodeId i = 0; i < node_count; ++i) {
    x[i] = rng.next_double();
    y[i] = rng.next_double();
  }

  const double r2 = r * r;
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 0; i < node_count; ++i)
    for (NodeId j = i + 1; j < node_count; ++j) {
      double dx = std::abs(x[i] - x[j]);
      double dy = std::abs(y[i] - y[j]);
      dx = std::min(dx, 1.0 - dx);  // torus wrap
      dy = std::min(dy, 1.0 - dy);
      if (dx * dx + dy * dy < r2) edges.emplace_back(i, j);
    }
  return Graph::from_edges(node_count, edges);
}

Graph gen_model(const std::string& model, NodeId node_count, double k_av,
                RandomStream& rng) {
  if (model == "er") return gen_er(node_count, k_av, rng);
  if (model == "ba") return gen_ba(node_count, k_av, rng);
  if (model == "rgg") return gen_rgg(node_count, k_av, rng);
  throw ParameterError("unknown model \"" + model +
                       "\" (expected er, ba or rgg)");
}

}  // namespace qlp
