#include "qlp/weighted_table.hpp"

#include <algorithm>
#include <cmath>

#include "qlp/errors.hpp"

namespace qlp {

std::size_t CumulativeWeightTable::index_for(double x) const {
  // upper_bound finds the first element strictly greater than x, which is the
  // smallest i with x < cumulative[i]; duplicates from zero weights are
  // skipped automatically.
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), x);
  if (it == cumulative_.end()) --it;
  return static_cast<std::size_t>(it - cumulative_.begin());
}

CumulativeWeightTable build_cumulative(std::span<const double> weights) {
  if (weights.empty())
    throw EmptySupportError("cannot build a table from an empty weight vector");
  CumulativeWeightTable table;
  table.cumulative_.reserve(weights.size());
  double running = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w))
      throw InvalidWeightError("weights must be finite and non-negative");
    running += w;
    table.cumulative_.push_back(running);
  }
  if (!(running > 0.0))
    throw EmptySupportError("all weights are zero; nothing to sample");
  return table;
}

std::size_t sample_index(const CumulativeWeightTable& table,
                         RandomStream& rng) {
  return table.index_for(rng.next_double(table.total()));
}

}  // namespace qlp
