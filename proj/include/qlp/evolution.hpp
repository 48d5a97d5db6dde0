#pragma once

#include <Eigen/Dense>
#include <memory>
#include <utility>
#include <vector>

#include "qlp/classical.hpp"
#include "qlp/graph.hpp"
#include "qlp/random.hpp"
#include "qlp/weighted_table.hpp"

namespace qlp {

inline constexpr NodeId kDefaultSpectralCap = 8192;
inline constexpr NodeId kDefaultDistributionCap = 2048;

// Full eigensystem of the adjacency matrix, eigenvalues ascending and
// eigenvectors orthonormal in columns. Everything computed downstream is a
// function of the spectral projectors, so eigenvector sign and intra-
// eigenspace basis choices do not matter.
struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
};

// Dense symmetric eigendecomposition (LAPACK dsyevd behind the scenes).
SpectralDecomposition decompose(const Graph& g,
                                NodeId dense_cap = kDefaultSpectralCap);

// ---- Chebyshev column evaluation -------------------------------------

// Smallest truncation order accepted for walk time t on a graph with maximum
// degree k_max. Below this the Bessel-coefficient tail is not guaranteed to
// sit under the 1e-8 entry budget.
int chebyshev_min_order(double t, int k_max);

// Order used when the caller does not pick one; min order plus slack.
int chebyshev_auto_order(double t, int k_max);

// Column `column` of cos(At) and sin(At) via the Chebyshev expansion of
// cos(xt), sin(xt) on [-k_max, k_max] (Bessel-function coefficients) applied
// with the three-term recurrence on sparse mat-vecs. order == 0 selects the
// auto order at t > 0; explicit orders below the minimum throw
// TruncationBoundError.
std::pair<Eigen::VectorXd, Eigen::VectorXd> chebyshev_entries(const Graph& g,
                                                              double t,
                                                              NodeId column,
                                                              int order = 0);

// ---- Walk evolution -------------------------------------------------------

// Entries of cos(At) and sin(At) at a fixed walk time t. The spectral
// backend is the default and the correctness reference; the Chebyshev
// backend trades per-entry cost for scalability past the dense cap.
class QlpEvolution {
 public:
  static QlpEvolution from_spectral(
      std::shared_ptr<const SpectralDecomposition> spectral, double t);
  static QlpEvolution from_graph(const Graph& g, double t,
                                 NodeId dense_cap = kDefaultSpectralCap);
  static QlpEvolution from_chebyshev(const Graph& g, double t, int order = 0);

  NodeId node_count() const { return node_count_; }
  double walk_time() const { return t_; }
  bool is_spectral() const { return spectral_ != nullptr; }
  const SpectralDecomposition& spectral() const;

  // (cos(At)_ij, sin(At)_ij); symmetric in (i, j).
  std::pair<double, double> cos_sin_entry(NodeId i, NodeId j) const;

  // Full columns of cos(At) and sin(At).
  void cos_sin_column(NodeId j, Eigen::VectorXd& cos_col,
                      Eigen::VectorXd& sin_col) const;

  // (sum_ij cos(At)_ij^2, sum_ij sin(At)_ij^2) = N * (p_even, p_odd).
  std::pair<double, double> squared_entry_totals() const;

  // Sums of squared cos/sin entries over an explicit pair list. Pairs should
  // arrive grouped by their first index; the evaluation profile for that
  // index is built once per group.
  std::pair<double, double> squared_entry_sums(
      std::span<const std::pair<NodeId, NodeId>> pairs) const;

 private:
  QlpEvolution() = default;

  NodeId node_count_ = 0;
  double t_ = 0.0;

  // spectral backend
  std::shared_ptr<const SpectralDecomposition> spectral_;
  Eigen::VectorXd cos_eigs_, sin_eigs_;  // cos/sin of lambda_k * t

  // Chebyshev backend
  std::shared_ptr<const Graph> graph_;
  int order_ = 0;
};

// Dense measurement distribution of the walk circuit: p_even(i,j) and
// p_odd(i,j) tables summing (jointly) to one.
struct QlpDistribution {
  Eigen::MatrixXd even;
  Eigen::MatrixXd odd;
  double total() const { return even.sum() + odd.sum(); }
};

QlpDistribution qlp_distribution(const QlpEvolution& evo,
                                 NodeId dense_cap = kDefaultDistributionCap);

// Draws (parity, i, j) outcomes from the joint measurement distribution via
// one flattened weight table over the 2 N^2 outcomes.
class QlpSampler {
 public:
  explicit QlpSampler(const QlpEvolution& evo,
                      NodeId dense_cap = kDefaultDistributionCap);
  explicit QlpSampler(const QlpDistribution& dist);

  struct Outcome {
    Method parity;  // kQlpEven or kQlpOdd
    NodeId i;
    NodeId j;
  };

  NodeId node_count() const { return node_count_; }
  Outcome sample(RandomStream& rng) const;

 private:
  NodeId node_count_ = 0;
  CumulativeWeightTable table_;
};

// Rejection loop over circuit outcomes: keeps (parity, i, j) with i != j and
// A_ij = 0, tagging records kQlpEven / kQlpOdd. The adjacency test reads the
// graph directly; the simulator is never charged to a QueryLedger (the walk's
// query cost is theoretical and lives in the cost estimator).
UsefulSampleRun qlp_sample_useful(const Graph& g, const QlpSampler& sampler,
                                  RandomStream& rng, std::int64_t n_s,
                                  std::uint64_t attempt_cap = 0);

}  // namespace qlp
