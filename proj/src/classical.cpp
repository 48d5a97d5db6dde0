#include "qlp/classical.hpp"

#include <algorithm>

namespace qlp {

namespace {

void check_count_cap(const Graph& g) {
  if (g.node_count() > kDenseCountCap)
    throw SizeCapError("dense walk counting capped at N = " +
                       std::to_string(kDenseCountCap) + ", graph has N = " +
                       std::to_string(g.node_count()));
}

// Reads every neighbour list through the metered oracle: N degree queries
// plus 2|E| neighbour queries, each list read exactly once.
std::vector<std::vector<NodeId>> read_adjacency(const Graph& g,
                                                QueryLedger& ledger,
                                                std::vector<int>* degrees_out) {
  std::vector<std::vector<NodeId>> lists(
      static_cast<std::size_t>(g.node_count()));
  if (degrees_out) degrees_out->resize(lists.size());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const int k = degree_query(g, ledger, v);
    if (degrees_out) (*degrees_out)[v] = k;
    auto& list = lists[v];
    list.reserve(static_cast<std::size_t>(k));
    for (int l = 1; l <= k; ++l) list.push_back(*neighbour_query(g, ledger, v, l));
  }
  return lists;
}

}  // namespace

std::string_view method_name(Method m) {
  switch (m) {
    case Method::kA2: return "a2";
    case Method::kA3: return "a3";
    case Method::kQlpEven: return "qlp-even";
    case Method::kQlpOdd: return "qlp-odd";
  }
  return "?";
}

PowerDistribution a2_counting(const Graph& g, QueryLedger& ledger) {
  check_count_cap(g);
  const NodeId n = g.node_count();
  PowerDistribution dist;
  dist.order = 2;
  dist.counts = CountMatrix::Zero(n, n);
  const auto lists = read_adjacency(g, ledger, nullptr);
  for (NodeId v = 0; v < n; ++v)
    for (NodeId i : lists[v])
      for (NodeId j : lists[v]) ++dist.counts(i, j);
  dist.l11_norm = dist.counts.sum();
  return dist;
}

PowerDistribution a3_counting(const Graph& g, QueryLedger& ledger) {
  check_count_cap(g);
  const NodeId n = g.node_count();
  PowerDistribution dist;
  dist.order = 3;
  dist.counts = CountMatrix::Zero(n, n);
  const auto lists = read_adjacency(g, ledger, nullptr);
  for (NodeId v = 0; v < n; ++v)
    for (NodeId u : lists[v])
      for (NodeId i : lists[v])
        for (NodeId j : lists[u]) ++dist.counts(i, j);
  dist.l11_norm = dist.counts.sum();
  return dist;
}

A2Sampler a2_prepare(const Graph& g, QueryLedger& ledger) {
  A2Sampler sampler;
  sampler.degrees.resize(static_cast<std::size_t>(g.node_count()));
  std::vector<double> weights(sampler.degrees.size());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const int k = degree_query(g, ledger, v);
    sampler.degrees[v] = k;
    weights[v] = static_cast<double>(k) * static_cast<double>(k);
  }
  sampler.node_table = build_cumulative(weights);
  return sampler;
}

std::pair<NodeId, NodeId> a2_sample_raw(const Graph& g, QueryLedger& ledger,
                                        const A2Sampler& sampler,
                                        RandomStream& rng) {
  const NodeId v = static_cast<NodeId>(sample_index(sampler.node_table, rng));
  const int k = sampler.degrees[v];
  const NodeId i =
      *neighbour_query(g, ledger, v, 1 + rng.next_index(k));
  const NodeId j =
      *neighbour_query(g, ledger, v, 1 + rng.next_index(k));
  return {i, j};
}

UsefulSampleRun a2_sample_useful(const Graph& g, QueryLedger& ledger,
                                 const A2Sampler& sampler, RandomStream& rng,
                                 std::int64_t n_s, std::uint64_t attempt_cap) {
  if (n_s < 1) throw ParameterError("n_s must be >= 1");
  if (attempt_cap == 0) attempt_cap = default_attempt_cap(n_s);
  UsefulSampleRun run;
  run.samples.reserve(static_cast<std::size_t>(n_s));
  std::uint64_t attempts_this_sample = 0;
  while (std::ssize(run.samples) < n_s) {
    if (run.raw_draws >= attempt_cap)
      throw SupportExhaustedError(run.raw_draws,
                                  std::ssize(run.samples), n_s);
    ++run.raw_draws;
    ++attempts_this_sample;
    const auto [i, j] = a2_sample_raw(g, ledger, sampler, rng);
    if (i == j) continue;
    ++run.pair_checks;
    if (vertex_pair_query(g, ledger, i, j) != 0) continue;
    run.samples.push_back({Method::kA2, i, j, attempts_this_sample});
    attempts_this_sample = 0;
  }
  return run;
}

bool A3Sampler::has_cached_edge(NodeId i, NodeId j) const {
  if (i == j) return false;
  const auto& a = neighbours[i];
  const auto& b = neighbours[j];
  const auto& probe = a.size() <= b.size() ? a : b;
  const NodeId target = a.size() <= b.size() ? j : i;
  return std::binary_search(probe.begin(), probe.end(), target);
}

A3Sampler a3_prepare(const Graph& g, QueryLedger& ledger) {
  if (g.edge_count() < 1)
    throw EmptySupportError("a3 sampling needs at least one edge");
  A3Sampler sampler;
  sampler.neighbours = read_adjacency(g, ledger, &sampler.degrees);

  sampler.pairs.reserve(2 * static_cast<std::size_t>(g.edge_count()));
  std::vector<double> weights;
  weights.reserve(sampler.pairs.capacity());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    for (NodeId u : sampler.neighbours[v]) {
      sampler.pairs.emplace_back(v, u);
      weights.push_back(static_cast<double>(sampler.degrees[v]) *
                        static_cast<double>(sampler.degrees[u]));
    }
  }
  sampler.pair_table = build_cumulative(weights);
  return sampler;
}

std::pair<NodeId, NodeId> a3_sample_raw(const A3Sampler& sampler,
                                        RandomStream& rng) {
  const auto [v, u] = sampler.pairs[sample_index(sampler.pair_table, rng)];
  const auto& nv = sampler.neighbours[v];
  const auto& nu = sampler.neighbours[u];
  const NodeId i = nv[static_cast<std::size_t>(
      rng.next_index(static_cast<std::int64_t>(nv.size())))];
  const NodeId j = nu[static_cast<std::size_t>(
      rng.next_index(static_cast<std::int64_t>(nu.size())))];
  return {i, j};
}

UsefulSampleRun a3_sample_useful(const A3Sampler& sampler, RandomStream& rng,
                                 std::int64_t n_s, std::uint64_t attempt_cap) {
  if (n_s < 1) throw ParameterError("n_s must be >= 1");
  if (attempt_cap == 0) attempt_cap = default_attempt_cap(n_s);
  UsefulSampleRun run;
  run.samples.reserve(static_cast<std::size_t>(n_s));
  std::uint64_t attempts_this_sample = 0;
  while (std::ssize(run.samples) < n_s) {
    if (run.raw_draws >= attempt_cap)
      throw SupportExhaustedError(run.raw_draws,
                                  std::ssize(run.samples), n_s);
    ++run.raw_draws;
    ++attempts_this_sample;
    const auto [i, j] = a3_sample_raw(sampler, rng);
    if (i == j) continue;
    // membership test against the cache: no ledger charge
    if (sampler.has_cached_edge(i, j)) continue;
    run.samples.push_back({Method::kA3, i, j, attempts_this_sample});
    attempts_this_sample = 0;
  }
  return run;
}

}  // namespace qlp
