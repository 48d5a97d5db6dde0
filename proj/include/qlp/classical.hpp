#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "qlp/graph.hpp"
#include "qlp/random.hpp"
#include "qlp/weighted_table.hpp"

namespace qlp {

using CountMatrix =
    Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

// Dense cap for the deterministic counting routines (test-oracle scale).
inline constexpr NodeId kDenseCountCap = 2048;

enum class Method { kA2, kA3, kQlpEven, kQlpOdd };

std::string_view method_name(Method m);

// Walk counts (A^n)_ij for n = 2 or 3 together with the L_{1,1} norm that
// normalizes them into a sampling distribution.
struct PowerDistribution {
  int order = 0;
  CountMatrix counts;
  std::int64_t l11_norm = 0;

  Eigen::MatrixXd probability_table() const {
    return counts.cast<double>() / static_cast<double>(l11_norm);
  }
};

// Counts length-2 walks by expanding each neighbourhood against itself.
// Charges exactly N degree + 2|E| neighbour queries (the cost of reading
// every neighbour list once).
PowerDistribution a2_counting(const Graph& g, QueryLedger& ledger);

// Counts length-3 walks by the nested neighbourhood expansion. Neighbour
// lists are read once and kept, so the charge is again N degree + 2|E|
// neighbour queries.
PowerDistribution a3_counting(const Graph& g, QueryLedger& ledger);

// A useful (accepted) sample. raw_attempts counts the raw draws consumed for
// this sample, the accepted draw included, so its mean estimates 1/p_G.
struct SampleRecord {
  Method method;
  NodeId i;
  NodeId j;
  std::uint64_t raw_attempts;
};

struct UsefulSampleRun {
  std::vector<SampleRecord> samples;
  std::uint64_t raw_draws = 0;   // total raw draws, accepted ones included
  std::uint64_t pair_checks = 0; // candidates that reached the A_ij test
  double acceptance_rate() const {
    return raw_draws > 0
               ? static_cast<double>(samples.size()) /
                     static_cast<double>(raw_draws)
               : 0.0;
  }
  double mean_raw_attempts() const {
    return samples.empty() ? 0.0
                           : static_cast<double>(raw_draws) /
                                 static_cast<double>(samples.size());
  }
};

// Cap on raw draws before a useful-sampling run gives up; 0 selects this
// default. Prevents hangs on graphs whose score support has no useful pairs.
inline std::uint64_t default_attempt_cap(std::int64_t n_s) {
  const std::uint64_t scaled = 10'000ULL * static_cast<std::uint64_t>(n_s);
  return scaled > 1'000'000ULL ? scaled : 1'000'000ULL;
}

// ---- A^2 sampling ---------------------------------------------------------

// Weighted node table for the wedge sampler, plus the degrees learned while
// building it. A degree learned during prepare is cached and never re-queried.
struct A2Sampler {
  CumulativeWeightTable node_table;  // weight k_v^2 per node
  std::vector<int> degrees;
};

// Builds the k_v^2 table with exactly N degree queries.
// Throws EmptySupportError on edgeless graphs.
A2Sampler a2_prepare(const Graph& g, QueryLedger& ledger);

// One raw draw: v ~ k_v^2, then i and j uniform from the neighbour list of v,
// independently and with replacement, one neighbour query each (exactly 2 per
// call). P[(i,j)] = (A^2)_ij / ||A^2||_{1,1}.
std::pair<NodeId, NodeId> a2_sample_raw(const Graph& g, QueryLedger& ledger,
                                        const A2Sampler& sampler,
                                        RandomStream& rng);

// Repeats raw draws, rejecting i == j (free) and existing edges (one
// vertex-pair query per surviving candidate), until n_s useful samples are
// collected. Duplicates count. Throws SupportExhaustedError past the cap.
UsefulSampleRun a2_sample_useful(const Graph& g, QueryLedger& ledger,
                                 const A2Sampler& sampler, RandomStream& rng,
                                 std::int64_t n_s,
                                 std::uint64_t attempt_cap = 0);

// ---- A^3 sampling ---------------------------------------------------------

// Weighted table over ordered adjacent pairs, plus the full adjacency cache
// read during prepare. After prepare, sampling and the usefulness test run
// entirely from the cache and charge nothing.
struct A3Sampler {
  CumulativeWeightTable pair_table;               // weight k_v * k_u
  std::vector<std::pair<NodeId, NodeId>> pairs;   // ordered adjacent (v, u)
  std::vector<std::vector<NodeId>> neighbours;    // sorted, from prepare
  std::vector<int> degrees;

  bool has_cached_edge(NodeId i, NodeId j) const;
};

// Builds the k_u*k_v pair table with exactly N degree + 2|E| neighbour
// queries. Throws EmptySupportError on edgeless graphs.
A3Sampler a3_prepare(const Graph& g, QueryLedger& ledger);

// One raw draw from the cache: (v,u) ~ k_v*k_u, i uniform from the cached
// neighbours of v, j from those of u. No queries.
// P[(i,j)] = (A^3)_ij / ||A^3||_{1,1}.
std::pair<NodeId, NodeId> a3_sample_raw(const A3Sampler& sampler,
                                        RandomStream& rng);

UsefulSampleRun a3_sample_useful(const A3Sampler& sampler, RandomStream& rng,
                                 std::int64_t n_s,
                                 std::uint64_t attempt_cap = 0);

}  // namespace qlp
