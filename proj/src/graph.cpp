#include "qlp/graph.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace qlp {

Graph Graph::from_edges(NodeId node_count,
                        std::span<const std::pair<NodeId, NodeId>> edges,
                        std::vector<std::string> labels) {
  if (node_count < 0) throw ParameterError("node_count must be non-negative");
  Graph g;
  g.node_count_ = node_count;
  g.labels_ = std::move(labels);
  if (!g.labels_.empty() &&
      g.labels_.size() != static_cast<std::size_t>(node_count))
    throw ParameterError("label vector size does not match node count");

  std::vector<std::vector<NodeId>> adjacency(
      static_cast<std::size_t>(node_count));
  for (const auto& [u, v] : edges) {
    g.check_node(u);
    g.check_node(v);
    if (u == v) continue;
    adjacency[u].push_back(v);
    adjacency[v].push_back(u);
  }

  std::int64_t half_edges = 0;
  g.offsets_.assign(1, 0);
  g.offsets_.reserve(static_cast<std::size_t>(node_count) + 1);
  for (auto& list : adjacency) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    half_edges += static_cast<std::int64_t>(list.size());
    g.offsets_.push_back(half_edges);
  }
  g.targets_.reserve(static_cast<std::size_t>(half_edges));
  for (const auto& list : adjacency)
    g.targets_.insert(g.targets_.end(), list.begin(), list.end());
  g.edge_count_ = half_edges / 2;
  return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  check_node(u);
  check_node(v);
  if (u == v) return false;
  // probe the shorter list
  if (degree(u) > degree(v)) std::swap(u, v);
  const auto list = neighbours(u);
  return std::binary_search(list.begin(), list.end(), v);
}

std::vector<std::pair<NodeId, NodeId>> Graph::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(static_cast<std::size_t>(edge_count_));
  for (NodeId v = 0; v < node_count_; ++v)
    for (NodeId u : neighbours(v))
      if (v < u) out.emplace_back(v, u);
  return out;
}

std::string Graph::label(NodeId v) const {
  check_node(v);
  return labels_.empty() ? std::to_string(v) : labels_[v];
}

int degree_query(const Graph& g, QueryLedger& ledger, NodeId v) {
  g.check_node(v);
  ++ledger.degree_queries;
  return g.degree(v);
}

std::optional<NodeId> neighbour_query(const Graph& g, QueryLedger& ledger,
                                      NodeId v, std::int64_t l) {
  g.check_node(v);
  if (l < 1) throw ParameterError("neighbour index l must be >= 1");
  ++ledger.neighbour_queries;
  if (l > g.degree(v)) return std::nullopt;
  return g.neighbours(v)[static_cast<std::size_t>(l - 1)];
}

int vertex_pair_query(const Graph& g, QueryLedger& ledger, NodeId u,
                      NodeId v) {
  g.check_node(u);
  g.check_node(v);
  ++ledger.pair_queries;
  return g.has_edge(u, v) ? 1 : 0;
}

LoadReport load_edge_list(std::istream& in) {
  std::unordered_map<std::string, NodeId> id_of;
  std::vector<std::string> labels;
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::unordered_set<std::uint64_t> seen;
  LoadReport report;

  auto intern = [&](const std::string& token) {
    auto [it, inserted] =
        id_of.try_emplace(token, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(token);
    return it->second;
  };

  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;

    std::istringstream tokens(line);
    std::string a, b, extra;
    if (!(tokens >> a >> b))
      throw ParseError(line_number, "expected two labels, got \"" + line + "\"");
    if (tokens >> extra)
      throw ParseError(line_number, "trailing token \"" + extra + "\"");

    const NodeId ia = intern(a);
    const NodeId ib = intern(b);
    if (ia == ib) {
      ++report.self_loops_dropped;
      continue;
    }
    const NodeId lo = std::min(ia, ib), hi = std::max(ia, ib);
    const std::uint64_t key =
        (static_cast<std::uint64_t>(lo) << 32) | static_cast<std::uint32_t>(hi);
    if (!seen.insert(key).second) {
      ++report.duplicates_dropped;
      continue;
    }
    edges.emplace_back(ia, ib);
  }

  if (labels.empty()) throw EmptyGraphError("edge list mentions no nodes");
  report.graph = Graph::from_edges(static_cast<NodeId>(labels.size()), edges,
                                   std::move(labels));
  return report;
}

void write_edge_list(std::ostream& out, const Graph& g) {
  for (const auto& [u, v] : g.edges())
    out << g.label(u) << ' ' << g.label(v) << '\n';
}

DegreeStatistics degree_statistics(const Graph& g) {
  if (g.node_count() < 1)
    throw EmptyGraphError("degree statistics need at least one node");
  DegreeStatistics stats;
  stats.k_av = 2.0 * static_cast<double>(g.edge_count()) /
               static_cast<double>(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v)
    stats.k_max = std::max(stats.k_max, g.degree(v));
  return stats;
}

std::int64_t degree_moment_sum(const Graph& g, int n) {
  if (n < 0) throw ParameterError("moment order must be non-negative");
  unsigned __int128 sum = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    unsigned __int128 term = 1;
    for (int p = 0; p < n; ++p) term *= static_cast<unsigned>(g.degree(v));
    sum += term;
  }
  if (sum > static_cast<unsigned __int128>(
                std::numeric_limits<std::int64_t>::max()))
    throw Error("degree moment sum overflows int64");
  return static_cast<std::int64_t>(sum);
}

double degree_moment(const Graph& g, int n) {
  if (g.node_count() < 1)
    throw EmptyGraphError("degree statistics need at least one node");
  return static_cast<double>(degree_moment_sum(g, n)) /
         static_cast<double>(g.node_count());
}

}  // namespace qlp
