#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qlp/graph.hpp"
#include "qlp/metrics.hpp"
#include "qlp/random.hpp"

namespace qlp {

// ---- Cross-validation splits ---------------------------------------------

// One fold: the train graph (same node set, fold edges removed) plus the
// removed edges as the ground-truth solution.
struct HoldoutSplit {
  int fold = 0;
  Graph train;
  SolutionMask solution{0, {}};
};

// Random permutation of the edge set partitioned into `folds` blocks; fold f
// trains without block f and is scored against it. Every edge is held out
// exactly once. Requires folds >= 2 and |E| >= folds.
std::vector<HoldoutSplit> kfold_split(const Graph& g, int folds,
                                      RandomStream& rng);

// ---- Walk-time sweep -------------------------------------------------------

struct ExperimentConfig {
  std::string network = "graph";
  std::vector<double> t_grid;
  int folds = 10;
  std::uint64_t master_seed = 0;
  unsigned threads = 1;
  // useful samples for the per-run sampler spot check; 0 disables it
  std::int64_t spot_check_samples = 0;
};

// 60 logarithmic points in [0.05, 10]: the walk-time grid used for
// usefulness sweeps.
std::vector<double> default_walk_time_grid();

// Cross-validation grid; starts at 0.1 where the precision ratios are
// numerically stable.
std::vector<double> default_xval_grid();

struct FoldCurveRow {
  int fold = 0;
  double t = 0.0;
  double pg_even = 0.0;
  double pg_odd = 0.0;
  std::optional<double> pcg_even, pcg_odd;
  std::optional<double> pcg_a2, pcg_a3;  // fold constants, repeated per t
};

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;
};

struct CurvePoint {
  double t = 0.0;
  MeanSd pg_even, pg_odd;
  // aggregated over the folds where the ratio is defined
  std::optional<MeanSd> pcg_even, pcg_odd, pcg_a2, pcg_a3;
};

// Exact-vs-sampled precision agreement measured on fold 0.
struct SamplerSpotCheck {
  std::int64_t useful_samples = 0;
  double exact_a2 = 0.0, sampled_a2 = 0.0;
  double exact_a3 = 0.0, sampled_a3 = 0.0;
};

struct CrossValidationResult {
  std::vector<FoldCurveRow> rows;  // fold-major, t-minor
  std::vector<CurvePoint> curve;
  std::optional<SamplerSpotCheck> spot_check;
};

// For each fold and each t: parity usefulness probabilities, precision
// ratios against the fold's holdout, and the fold-constant classical
// baselines; aggregated into per-t means and standard deviations across
// folds. Folds run in parallel; results are deterministic for a fixed
// config regardless of thread count.
CrossValidationResult sweep_t(const Graph& g, const ExperimentConfig& config);

// ---- Size / density sweeps --------------------------------------------

struct ScalingRow {
  std::string model;
  NodeId n = 0;
  double k_av = 0.0;
  std::uint64_t seed = 0;  // seed ordinal within the sweep
  double t = 0.0;
  double p_g = 0.0;
};

// p_G(t) per (N, seed, t) at fixed k_av.
std::vector<ScalingRow> sweep_size(const std::string& model,
                                   std::span<const NodeId> sizes, double k_av,
                                   std::span<const double> t_values,
                                   int seeds_per_cell,
                                   std::uint64_t master_seed,
                                   unsigned threads);

// p_G(t) per (k_av, seed, t) at fixed N.
std::vector<ScalingRow> sweep_density(const std::string& model, NodeId n,
                                      std::span<const double> k_av_values,
                                      std::span<const double> t_values,
                                      int seeds_per_cell,
                                      std::uint64_t master_seed,
                                      unsigned threads);

// (max - min) / mean; 0 for a single value.
double relative_spread(std::span<const double> values);

// Seed-mean p_G grouped by one of the sweep axes at a fixed t.
std::vector<std::pair<double, double>> seed_means_by_axis(
    std::span<const ScalingRow> rows, double t, bool by_k_av);

struct DensityTrend {
  bool non_decreasing_to_peak = false;
  bool flat_after_peak = false;  // within 15% of the peak
  double peak_k_av = 0.0;
};

DensityTrend density_trend(std::span<const ScalingRow> rows, double t);

// ---- Empirical-vs-exact distribution checks --------------------------------

inline constexpr NodeId kExactOracleCap = 64;

enum class SamplerKind { kA2, kA3, kQlp };

struct DistributionCheckReport {
  std::string sampler;
  std::uint64_t draws = 0;
  double tv_distance = 0.0;
};

// Total-variation distance between `draws` raw samples and the exact
// sampling distribution (walk counts for a2/a3, the dense measurement
// tables for the quantum walk, parity included). t is ignored for the
// classical kinds.
DistributionCheckReport distribution_check(SamplerKind kind, const Graph& g,
                                           double t, std::uint64_t draws,
                                           RandomStream& rng);

// ---- CSV output ------------------------------------------------------------

// "# config: k=v k=v ... hash=xxxxxxxx" with an FNV-1a hash of the pairs.
std::string provenance_line(
    std::span<const std::pair<std::string, std::string>> config);

// Fixed-precision formatting shared by all writers (reproducibility).
std::string format_double(double x);

void write_curves_csv(std::ostream& out, const std::string& provenance,
                      const std::string& network,
                      std::span<const FoldCurveRow> rows);

void write_scaling_csv(std::ostream& out, const std::string& provenance,
                       std::span<const ScalingRow> rows);

struct QueriesRow {
  std::string method;
  std::int64_t n_s = 0;
  QueryLedger ledger;
  std::uint64_t raw_attempts = 0;
};

void write_queries_csv(std::ostream& out, const std::string& provenance,
                       std::span<const QueriesRow> rows);

}  // namespace qlp
