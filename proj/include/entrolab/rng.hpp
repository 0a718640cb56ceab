#pragma once

#include <cstdint>
#include <random>

namespace entrolab {

// splitmix64 finalizer; full avalanche on 64 bits.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// All randomness in the library flows from one caller-supplied 64-bit seed.
// Trial t of a multi-trial experiment uses derive_seed(seed, t), so results
// are reproducible given (seed, n) and trials are independent streams.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed ^ mix64(index + 0x9e3779b97f4a7c15ULL));
}

class UnitRng {
 public:
  explicit UnitRng(std::uint64_t seed) : eng_(seed) {}

  // uniform in [0, 1) with 53 random bits
  double next() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  std::uint64_t next_u64() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace entrolab
