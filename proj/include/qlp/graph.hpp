#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qlp/errors.hpp"

namespace qlp {

using NodeId = std::int32_t;

// Exact counters for the three input-model query kinds. Every cost statement
// the samplers make is phrased in terms of these counters; merging is
// component-wise addition, so per-worker ledgers can be summed after
// parallel work.
struct QueryLedger {
  std::uint64_t degree_queries = 0;
  std::uint64_t neighbour_queries = 0;
  std::uint64_t pair_queries = 0;

  std::uint64_t total() const {
    return degree_queries + neighbour_queries + pair_queries;
  }
  QueryLedger& operator+=(const QueryLedger& other) {
    degree_queries += other.degree_queries;
    neighbour_queries += other.neighbour_queries;
    pair_queries += other.pair_queries;
    return *this;
  }
  friend QueryLedger operator+(QueryLedger a, const QueryLedger& b) {
    a += b;
    return a;
  }
  friend bool operator==(const QueryLedger&, const QueryLedger&) = default;
};

// Immutable simple undirected graph over dense ids 0..N-1, stored as CSR
// adjacency. Neighbour lists are sorted ascending; that ordering is the
// project-wide convention defining "the l-th neighbour" (the input model
// leaves the ordering open) and enables binary-search pair lookups.
// Immutable after construction, safe to share across threads.
class Graph {
 public:
  Graph() = default;

  // Builds a graph from an edge list over ids [0, node_count). Duplicate
  // edges and self-loops are dropped. Throws InvalidNodeError on ids out of
  // range. `labels`, when non-empty, carries the original external labels.
  static Graph from_edges(NodeId node_count,
                          std::span<const std::pair<NodeId, NodeId>> edges,
                          std::vector<std::string> labels = {});

  NodeId node_count() const { return node_count_; }
  std::int64_t edge_count() const { return edge_count_; }

  // Unmetered structural access. The samplers never touch these: they see
  // the graph only through the metered query functions below plus their own
  // caches of answered queries. The unmetered view exists for test oracles,
  // the walk-operator builds, and analysis-time metrics, none of which are
  // charged to a QueryLedger.
  int degree(NodeId v) const {
    return static_cast<int>(offsets_[static_cast<std::size_t>(v) + 1] -
                            offsets_[v]);
  }
  std::span<const NodeId> neighbours(NodeId v) const {
    return {targets_.data() + offsets_[v],
            static_cast<std::size_t>(offsets_[static_cast<std::size_t>(v) + 1] -
                                     offsets_[v])};
  }
  bool has_edge(NodeId u, NodeId v) const;

  // Undirected edges as canonical (u < v) pairs, sorted.
  std::vector<std::pair<NodeId, NodeId>> edges() const;

  std::string label(NodeId v) const;
  bool has_labels() const { return !labels_.empty(); }

  void check_node(NodeId v) const {
    if (v < 0 || v >= node_count_)
      throw InvalidNodeError("node id " + std::to_string(v) +
                             " out of range [0, " + std::to_string(node_count_) +
                             ")");
  }

 private:
  NodeId node_count_ = 0;
  std::int64_t edge_count_ = 0;
  std::vector<std::int64_t> offsets_ = {0};
  std::vector<NodeId> targets_;
  std::vector<std::string> labels_;
};

// ---- Input-model queries ----------------------------------------------
// Each call charges exactly one query of its kind to the ledger.

// Returns k_v.
int degree_query(const Graph& g, QueryLedger& ledger, NodeId v);

// Returns the l-th neighbour of v (1-based over the sorted list) or nullopt
// when l exceeds k_v - the input model's "absent" answer. The query is
// charged either way.
std::optional<NodeId> neighbour_query(const Graph& g, QueryLedger& ledger,
                                      NodeId v, std::int64_t l);

// Returns the adjacency-matrix entry A_uv in {0,1}; A_vv is 0. Resolved by
// binary search in the sorted neighbour list of the lower-degree endpoint.
int vertex_pair_query(const Graph& g, QueryLedger& ledger, NodeId u, NodeId v);

// ---- Edge-list files ----------------------------------------------------

struct LoadReport {
  Graph graph;
  std::int64_t duplicates_dropped = 0;
  std::int64_t self_loops_dropped = 0;
};

// Reads whitespace-separated label pairs, one edge per line; lines whose
// first non-blank character is '#' are comments. Labels are remapped to
// dense ids in order of first appearance; duplicates and self-loops are
// dropped and counted. Throws ParseError (with line number) on malformed
// lines and EmptyGraphError when no nodes are mentioned at all.
LoadReport load_edge_list(std::istream& in);

// Writes one "label label" line per edge, canonical order.
void write_edge_list(std::ostream& out, const Graph& g);

// ---- Degree statistics ---------------------------------------------------

struct DegreeStatistics {
  double k_av = 0.0;  // 2|E|/N
  int k_max = 0;
};

DegreeStatistics degree_statistics(const Graph& g);

// Exact integer sum of k_v^n; throws on int64 overflow.
std::int64_t degree_moment_sum(const Graph& g, int n);

// n-th moment <k^n> = (1/N) * sum_v k_v^n.
double degree_moment(const Graph& g, int n);

}  // namespace qlp
