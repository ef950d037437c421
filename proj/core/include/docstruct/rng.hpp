#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace docstruct {

// Seeded generator with platform-independent derived draws. The standard
// distributions are implementation-defined, so uniform draws and shuffles are
// implemented here on top of the raw 64-bit engine output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of precision.
  double uniform();

  // Uniform integer in [0, n). n must be positive.
  std::size_t below(std::size_t n);

  // Standard normal via Box-Muller.
  double normal();

  bool bernoulli(double p) { return uniform() < p; }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = below(i);
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

  // Independent child stream, e.g. one per generated document.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream);

 private:
  std::mt19937_64 engine_;
};

}  // namespace docstruct
