#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qlp/classical.hpp"
#include "qlp/evolution.hpp"
#include "qlp/graph.hpp"

namespace qlp {

// Predicate over candidate missing links: G_ij = 1 iff A_ij = 0 and i != j,
// i.e. G = J - (A + I) entry-wise.
struct GoodMask {
  const Graph* graph;

  bool contains(NodeId i, NodeId j) const {
    return i != j && !graph->has_edge(i, j);
  }
  // N^2 - N - 2|E|
  std::int64_t support_size() const {
    const auto n = static_cast<std::int64_t>(graph->node_count());
    return n * n - n - 2 * graph->edge_count();
  }
};

// Holdout edge set treated as the ground truth of missing links. Stores
// canonical (u < v) pairs; symmetric by construction.
class SolutionMask {
 public:
  SolutionMask(NodeId node_count,
               std::vector<std::pair<NodeId, NodeId>> pairs);

  NodeId node_count() const { return node_count_; }
  std::int64_t pair_count() const {
    return static_cast<std::int64_t>(pairs_.size());
  }
  bool contains(NodeId i, NodeId j) const;
  std::span<const std::pair<NodeId, NodeId>> pairs() const { return pairs_; }

 private:
  NodeId node_count_ = 0;
  std::vector<std::pair<NodeId, NodeId>> pairs_;  // canonical, sorted
};

// A normalized score table: prob_ij = |f(A)_ij|^q / ||f(A)||_q^q. The
// exponent is carried for bookkeeping (q = 1 for the walk-count methods,
// q = 2 for the quantum walk distribution).
struct ScoreDistribution {
  Eigen::MatrixXd prob;
  int exponent = 1;
};

ScoreDistribution score_distribution(const PowerDistribution& power);
ScoreDistribution score_distribution(const QlpDistribution& dist);

// Probability mass a normalized score table places on the diagonal and on
// existing edges (the (A+I) support). Throws UnnormalizedDistributionError
// when the table does not sum to one.
double p_bad(const ScoreDistribution& dist, const Graph& g);

// Mass on the good support, summed directly over G_ij = 1 cells; together
// with p_bad this partitions the unit of probability.
double p_good(const ScoreDistribution& dist, const Graph& g);

struct ParityProbabilities {
  double even = 0.0;
  double odd = 0.0;
  double total() const { return even + odd; }
};

// p_G(t) of the quantum walk, split by parity:
//   p_G^even = (1/N) sum_{G_ij=1} cos(At)_ij^2, and the sine analogue.
// Computed as (Frobenius total - mass on A+I support)/N, which needs only
// N + 2|E| entry evaluations instead of dense tables.
ParityProbabilities p_good_qlp(const Graph& g, const QlpEvolution& evo);

// p_C^even/odd: walk mass on the holdout solution entries. Validates that
// the solution is disjoint from the train graph's edges.
ParityProbabilities p_correct_qlp(const Graph& g, const QlpEvolution& evo,
                                  const SolutionMask& solution);

inline constexpr double kGoodProbabilityFloor = 1e-6;

// Precision ratio p_C / p_G in [0, 1]. Below the p_G floor the ratio is
// numerically meaningless and the undefined marker (nullopt) is returned
// instead of a number.
std::optional<double> p_correct_given_good(double p_correct, double p_good,
                                           double floor = kGoodProbabilityFloor);

// Classical analogue for order 2 or 3:
//   sum A'_ij (A^n)_ij / sum G_ij (A^n)_ij,
// the q = 1 counterpart of the walk precision ratio. nullopt when the
// denominator vanishes. Analysis-time tool; not ledger charged.
std::optional<double> p_cg_classical(const Graph& g, int order,
                                     const SolutionMask& solution);

// Dense walk counts without query accounting, for analysis-time consumers.
CountMatrix power_counts(const Graph& g, int order);

// Scale-free largest-degree estimate N^{1/(gamma-1)}; gamma must exceed 2.
double kmax_scalefree(double node_count, double gamma);

// Sample count below which the d-sparse walk beats the wedge sampler on a
// scale-free network: N^{(gamma-2)/(gamma-1)}.
double scalefree_crossover_ns(double node_count, double gamma);

// One row of the query-cost comparison: the symbolic inputs plus the
// evaluated bound (infinity when p_G = 0 makes the cost unbounded).
struct CostEstimate {
  std::string method;
  std::string formula;
  double queries = 0.0;
};

struct CostTable {
  CostEstimate a2;
  CostEstimate a3;
  CostEstimate qlp_dsparse;
  // n_s beyond which the d-sparse walk cost exceeds the wedge-sampler cost;
  // infinity when it never does.
  double crossover_ns = 0.0;
};

// Evaluates the per-method query bounds:
//   a2:  N + min(n_s/p_G, 2|E|)   (sampling saturates at reading the input)
//   a3:  2|E|                      (directed reads; |E| up to the convention)
//   qlp: (n_s/p_G) * k_max * t     (d-sparse simulation cost per circuit run)
CostTable query_cost_table(double node_count, double edge_count, double n_s,
                           double p_g, double k_max, double t);

}  // namespace qlp
