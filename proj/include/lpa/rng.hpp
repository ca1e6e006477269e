#pragma once

#include <cstdint>

namespace lpa {

/// SplitMix64 mix step; counter-based draws hash (seed, index) through this.
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline double to_unit_interval(uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Counter-based per-trial stream: every draw is a pure function of
/// (seed, stream, counter), so any partition of trials over workers sees
/// identical randomness.
class CounterRng {
 public:
  CounterRng(uint64_t seed, uint64_t stream)
      : base_(splitmix64(seed ^ splitmix64(stream + 0x632BE59BD9B4E019ull))) {}

  uint64_t next_u64() { return splitmix64(base_ + 0x9E3779B97F4A7C15ull * ++ctr_); }
  double uniform01() { return to_unit_interval(next_u64()); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  uint64_t base_;
  uint64_t ctr_ = 0;
};

}  // namespace lpa
