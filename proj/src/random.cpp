#include "qlp/random.hpp"

#include <cmath>
#include <limits>

#include "qlp/errors.hpp"

namespace qlp {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t master_seed,
                           std::uint64_t stream_index)
    : master_seed_(master_seed), stream_index_(stream_index) {
  // Mixing function: absorb the stream index into the splitmix64 state with
  // an odd multiplier, then expand eight 64-bit words of seed material.
  std::uint64_t state = master_seed;
  const std::uint64_t header = splitmix64(state);
  state ^= stream_index * 0xD1B54A32D192ED03ULL + header;

  std::uint32_t material[16];
  for (int w = 0; w < 8; ++w) {
    const std::uint64_t x = splitmix64(state);
    material[2 * w] = static_cast<std::uint32_t>(x);
    material[2 * w + 1] = static_cast<std::uint32_t>(x >> 32);
  }
  std::seed_seq seq(material, material + 16);
  engine_.seed(seq);
}

double RandomStream::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::next_double(double bound) {
  const double x = next_double() * bound;
  // u*bound can round up to bound for u just below 1.
  return x < bound ? x : std::nextafter(bound, 0.0);
}

std::int64_t RandomStream::next_index(std::int64_t n) {
  if (n < 1) throw ParameterError("next_index requires n >= 1");
  const std::uint64_t un = static_cast<std::uint64_t>(n);
  const std::uint64_t rem =
      (std::numeric_limits<std::uint64_t>::max() % un + 1) % un;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - rem;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x > limit);
  return static_cast<std::int64_t>(x % un);
}

}  // namespace qlp
