#pragma once

#include <cstdint>
#include <random>

namespace qlp {

// Seedable random stream addressed by (master_seed, stream_index).
//
// The pair is expanded into seed material for a mt19937_64 engine by a fixed
// splitmix64 chain (see random.cpp), so the mapping from (seed, index) to the
// output sequence is part of the reproducibility contract: any worker, on any
// thread, rebuilds exactly the same stream from the pair alone. Streams with
// distinct indices are independent for statistical purposes.
class RandomStream {
 public:
  RandomStream() : RandomStream(0, 0) {}
  RandomStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double();

  // Uniform in [0, bound) for bound > 0; never returns bound itself.
  double next_double(double bound);

  // Uniform integer in [0, n) for n >= 1, exact via rejection.
  std::int64_t next_index(std::int64_t n);

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  std::mt19937_64 engine_;
};

inline RandomStream derive_stream(std::uint64_t master_seed,
                                  std::uint64_t stream_index) {
  return RandomStream(master_seed, stream_index);
}

}  // namespace qlp
