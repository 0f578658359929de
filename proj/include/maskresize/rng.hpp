#pragma once

#include <cstdint>
#include <random>

namespace maskresize {

// splitmix64 finalizer; used to derive substream seeds.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Deterministic random source. std::mt19937_64 has a standard-mandated
// output sequence; the draws below avoid std::uniform_*_distribution,
// whose mapping from engine output is implementation-defined. All derived
// datasets are therefore bit-identical across platforms and runs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_unit() < p; }

  // Uniform integer in [lo, hi], inclusive. Modulo reduction; the bias is
  // below 2^-50 for the spans used here.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next_u64() % span);
  }

  double uniform_real(double lo, double hi) { return lo + next_unit() * (hi - lo); }

  // Independent substream for element `index`. Rule: the substream seed is
  // mix64(root_seed ^ mix64(index + 1)); derived from the root seed alone,
  // so it does not depend on draws already made from this generator.
  Rng substream(std::uint64_t index) const { return Rng(mix64(seed_ ^ mix64(index + 1))); }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
};

}  // namespace maskresize
