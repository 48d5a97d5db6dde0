#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qlp/random.hpp"

namespace qlp {

// Prefix-sum table over a non-negative weight vector. Sampling bisects the
// cumulative array: the drawn index for a uniform x in [0, total) is the
// smallest i with x < cumulative[i], so zero-weight entries are never chosen.
class CumulativeWeightTable {
 public:
  std::size_t size() const { return cumulative_.size(); }
  double total() const { return cumulative_.empty() ? 0.0 : cumulative_.back(); }
  std::span<const double> cumulative() const { return cumulative_; }

  // Smallest index i with x < cumulative[i]; requires 0 <= x < total().
  std::size_t index_for(double x) const;

 private:
  friend CumulativeWeightTable build_cumulative(std::span<const double>);
  std::vector<double> cumulative_;
};

// Builds the prefix sums in order. Throws EmptySupportError when the weight
// vector is empty or sums to zero, InvalidWeightError on negative or
// non-finite entries.
CumulativeWeightTable build_cumulative(std::span<const double> weights);

// One weighted draw; index i comes out with probability weight_i / total.
std::size_t sample_index(const CumulativeWeightTable& table, RandomStream& rng);

}  // namespace qlp
