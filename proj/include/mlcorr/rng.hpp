#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace mlcorr {

// mt19937_64 with hand-rolled reductions. The engine's output sequence is
// pinned by the standard; std::shuffle and the distribution classes are
// not, so splits and synthetic corpora would differ across stdlibs.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // [0, 1), 53-bit resolution
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // modulo reduction; bias is negligible for n << 2^64
  std::size_t index(std::size_t n) { return n == 0 ? 0 : next() % n; }

  bool bernoulli(double p) { return uniform() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = index(i);
      std::swap(v[i - 1], v[j]);
    }
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace mlcorr
