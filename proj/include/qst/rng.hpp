#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace qst {

// Deterministic random source used by every sampling routine in the library.
//
// The generator is std::mt19937_64, which the C++ standard pins bit-for-bit.
// All derived draws are built from its raw 64-bit output with fixed
// arithmetic (no std::*_distribution, whose algorithms are
// implementation-defined), so identical seeds give identical streams on any
// conforming platform:
//   uniform():  top 53 bits scaled to [0, 1)
//   gaussian(): Box-Muller pair on two uniforms, second value cached
//   binomial(): count of integer-threshold Bernoulli trials
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Standard normal deviate.
  double gaussian();

  // Binomial(trials, p) via per-trial Bernoulli counting. Exact and stream-
  // deterministic; cost is O(trials).
  std::int64_t binomial(std::int64_t trials, double p);

  // One multinomial draw of `trials` into bins with the given (unnormalized,
  // nonnegative after clamping) weights, via sequential conditional binomials.
  std::vector<std::int64_t> multinomial(std::int64_t trials,
                                        std::span<const double> weights);

 private:
  std::mt19937_64 engine_;
  double cached_gaussian_ = 0.0;
  bool has_cached_gaussian_ = false;
};

}  // namespace qst
