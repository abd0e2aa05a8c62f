#pragma once

// Deterministic random source. SplitMix64 keeps the consumption model dead
// simple: one 64-bit word per next() call, so a (seed, draw order) pair fully
// pins every output. Child streams for sharded runs are derived from
// (seed, stream index) below; see split().

#include "ucshape/exact.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace ucshape {

class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Child stream for shard j of a run seeded with s: state starts at
  // mix(s ^ (j+1)*GAMMA). Independent-looking streams, reproducible.
  static SplitMix64 stream(uint64_t seed, uint64_t index) {
    SplitMix64 r(seed ^ ((index + 1) * 0xD1B54A32D192ED03ULL));
    r.next();
    return r;
  }

  // Unbiased uniform draw in [0, bound), bound >= 1. Rejection on the top
  // remainder chunk of the 64-bit range.
  uint64_t below(uint64_t bound) {
    if (bound <= 1) return 0;
    const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    for (;;) {
      uint64_t v = next();
      if (v < limit) return v % bound;
    }
  }

  // Uniform big integer in [0, bound): assemble just enough 64-bit words,
  // mask the top word, reject values >= bound.
  BigInt below_big(const BigInt& bound) {
    if (bound <= 1) return 0;
    const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(bound)) + 1;
    const unsigned words = (bits + 63) / 64;
    const unsigned top_bits = bits - (words - 1) * 64;
    const uint64_t top_mask = top_bits >= 64 ? UINT64_MAX : ((uint64_t{1} << top_bits) - 1);
    for (;;) {
      BigInt v = 0;
      for (unsigned w = 0; w < words; ++w) {
        uint64_t word = next();
        if (w + 1 == words) word &= top_mask;
        v |= BigInt(word) << (64 * w);
      }
      if (v < bound) return v;
    }
  }

  // Fisher-Yates. Draw order: below(i+1) for i = n-1 .. 1.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // Uniform k-subset of {0,..,n-1}, returned sorted ascending. Partial
  // Fisher-Yates over an index array; uniform over subsets.
  std::vector<int> subset(int n, int k) {
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    for (int i = 0; i < k; ++i) {
      int j = i + static_cast<int>(below(static_cast<uint64_t>(n - i)));
      std::swap(idx[i], idx[j]);
    }
    std::vector<int> out(idx.begin(), idx.begin() + k);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  uint64_t state_;
};

}  // namespace ucshape
