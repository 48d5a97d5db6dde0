#include "qlp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qlp {

namespace {

constexpr double kNormalizationTolerance = 1e-9;

void check_normalized(const ScoreDistribution& dist) {
  const double total = dist.prob.sum();
  if (std::abs(total - 1.0) > kNormalizationTolerance)
    throw UnnormalizedDistributionError(
        "score table sums to " + std::to_string(total) + ", expected 1");
}

// Ordered (i, j) pairs covering the (A+I) support, grouped by i.
std::vector<std::pair<NodeId, NodeId>> bad_support_pairs(const Graph& g) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  pairs.reserve(static_cast<std::size_t>(g.node_count()) +
                2 * static_cast<std::size_t>(g.edge_count()));
  for (NodeId i = 0; i < g.node_count(); ++i) {
    pairs.emplace_back(i, i);
    for (NodeId j : g.neighbours(i)) pairs.emplace_back(i, j);
  }
  return pairs;
}

// Both orientations of the solution pairs, grouped by first index.
std::vector<std::pair<NodeId, NodeId>> solution_support_pairs(
    const SolutionMask& solution) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  pairs.reserve(2 * static_cast<std::size_t>(solution.pair_count()));
  for (const auto& [u, v] : solution.pairs()) pairs.emplace_back(u, v);
  for (const auto& [u, v] : solution.pairs()) pairs.emplace_back(v, u);
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

void check_holdout(const Graph& g, const SolutionMask& solution) {
  if (solution.node_count() != g.node_count())
    throw InvalidHoldoutError("solution mask node count " +
                              std::to_string(solution.node_count()) +
                              " does not match graph node count " +
                              std::to_string(g.node_count()));
  for (const auto& [u, v] : solution.pairs())
    if (g.has_edge(u, v))
      throw InvalidHoldoutError("solution pair (" + std::to_string(u) + ", " +
                                std::to_string(v) +
                                ") overlaps a train edge");
}

}  // namespace

SolutionMask::SolutionMask(NodeId node_count,
                           std::vector<std::pair<NodeId, NodeId>> pairs)
    : node_count_(node_count) {
  pairs_.reserve(pairs.size());
  for (auto [u, v] : pairs) {
    if (u < 0 || u >= node_count || v < 0 || v >= node_count)
      throw InvalidNodeError("solution pair endpoint out of range");
    if (u == v)
      throw InvalidHoldoutError("solution pairs must join distinct nodes");
    if (u > v) std::swap(u, v);
    pairs_.emplace_back(u, v);
  }
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
}

bool SolutionMask::contains(NodeId i, NodeId j) const {
  if (i == j) return false;
  if (i > j) std::swap(i, j);
  return std::binary_search(pairs_.begin(), pairs_.end(), std::pair{i, j});
}

ScoreDistribution score_distribution(const PowerDistribution& power) {
  return {power.probability_table(), 1};
}

ScoreDistribution score_distribution(const QlpDistribution& dist) {
  return {dist.even + dist.odd, 2};
}

double p_bad(const ScoreDistribution& dist, const Graph& g) {
  check_normalized(dist);
  double mass = 0.0;
  for (const auto& [i, j] : bad_support_pairs(g)) mass += dist.prob(i, j);
  return mass;
}

double p_good(const ScoreDistribution& dist, const Graph& g) {
  check_normalized(dist);
  const GoodMask good{&g};
  double mass = 0.0;
  for (NodeId i = 0; i < g.node_count(); ++i)
    for (NodeId j = 0; j < g.node_count(); ++j)
      if (good.contains(i, j)) mass += dist.prob(i, j);
  return mass;
}

ParityProbabilities p_good_qlp(const Graph& g, const QlpEvolution& evo) {
  if (evo.node_count() != g.node_count())
    throw ParameterError("evolution node count does not match graph");
  const auto [cos_total, sin_total] = evo.squared_entry_totals();
  const auto [cos_bad, sin_bad] =
      evo.squared_entry_sums(bad_support_pairs(g));
  const double n = static_cast<double>(g.node_count());
  return {(cos_total - cos_bad) / n, (sin_total - sin_bad) / n};
}

ParityProbabilities p_correct_qlp(const Graph& g, const QlpEvolution& evo,
                                  const SolutionMask& solution) {
  if (evo.node_count() != g.node_count())
    throw ParameterError("evolution node count does not match graph");
  check_holdout(g, solution);
  const auto [cos_mass, sin_mass] =
      evo.squared_entry_sums(solution_support_pairs(solution));
  const double n = static_cast<double>(g.node_count());
  return {cos_mass / n, sin_mass / n};
}

std::optional<double> p_correct_given_good(double p_correct, double p_good,
                                           double floor) {
  if (!(p_good > floor)) return std::nullopt;
  return p_correct / p_good;
}

CountMatrix power_counts(const Graph& g, int order) {
  if (order != 2 && order != 3)
    throw ParameterError("power counts support order 2 or 3");
  if (g.node_count() > kDenseCountCap)
    throw SizeCapError("dense walk counting capped at N = " +
                       std::to_string(kDenseCountCap));
  const NodeId n = g.node_count();
  CountMatrix counts = CountMatrix::Zero(n, n);
  if (order == 2) {
    for (NodeId v = 0; v < n; ++v)
      for (NodeId i : g.neighbours(v))
        for (NodeId j : g.neighbours(v)) ++counts(i, j);
  } else {
    for (NodeId v = 0; v < n; ++v)
      for (NodeId u : g.neighbours(v))
        for (NodeId i : g.neighbours(v))
          for (NodeId j : g.neighbours(u)) ++counts(i, j);
  }
  return counts;
}

std::optional<double> p_cg_classical(const Graph& g, int order,
                                     const SolutionMask& solution) {
  check_holdout(g, solution);
  const CountMatrix counts = power_counts(g, order);

  std::int64_t solution_mass = 0;
  for (const auto& [u, v] : solution.pairs())
    solution_mass += counts(u, v) + counts(v, u);

  std::int64_t bad_mass = 0;
  for (NodeId i = 0; i < g.node_count(); ++i) {
    bad_mass += counts(i, i);
    for (NodeId j : g.neighbours(i)) bad_mass += counts(i, j);
  }
  const std::int64_t good_mass = counts.sum() - bad_mass;
  if (good_mass <= 0) return std::nullopt;
  return static_cast<double>(solution_mass) / static_cast<double>(good_mass);
}

double kmax_scalefree(double node_count, double gamma) {
  if (!(gamma > 2.0))
    throw OutOfRegimeError("scale-free estimate needs gamma > 2, got " +
                           std::to_string(gamma));
  if (!(node_count >= 1.0)) throw ParameterError("node count must be >= 1");
  return std::pow(node_count, 1.0 / (gamma - 1.0));
}

double scalefree_crossover_ns(double node_count, double gamma) {
  if (!(gamma > 2.0))
    throw OutOfRegimeError("crossover needs gamma > 2, got " +
                           std::to_string(gamma));
  return std::pow(node_count, (gamma - 2.0) / (gamma - 1.0));
}

CostTable query_cost_table(double node_count, double edge_count, double n_s,
                           double p_g, double k_max, double t) {
  if (node_count <= 0 || edge_count < 0 || n_s <= 0 || k_max <= 0 || t <= 0)
    throw ParameterError("cost inputs must be positive");
  if (p_g < 0.0 || p_g > 1.0)
    throw ParameterError("p_G must lie in [0, 1]");

  const double inf = std::numeric_limits<double>::infinity();
  const double per_sample = p_g > 0.0 ? n_s / p_g : inf;

  CostTable table;
  table.a2 = {"A2", "N + n_s/p_G",
              node_count + std::min(per_sample, 2.0 * edge_count)};
  table.a3 = {"A3", "2|E|", 2.0 * edge_count};
  table.qlp_dsparse = {"QLP(d-sparse)", "(n_s/p_G)*k_max*t",
                       per_sample * k_max * t};
  // cost parity: (x/p_G) k_max t = N + x/p_G
  table.crossover_ns =
      k_max * t > 1.0 ? node_count * p_g / (k_max * t - 1.0) : inf;
  return table;
}

}  // namespace qlp
