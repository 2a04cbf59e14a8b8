#include "qst/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qst/errors.hpp"

namespace qst {

double SeededRng::gaussian() {
  if (has_cached_gaussian_) {
    has_cached_gaussian_ = false;
    return cached_gaussian_;
  }
  // 1 - u keeps the log argument in (0, 1].
  const double r = std::sqrt(-2.0 * std::log(1.0 - uniform()));
  const double phi = 2.0 * std::numbers::pi * uniform();
  cached_gaussian_ = r * std::sin(phi);
  has_cached_gaussian_ = true;
  return r * std::cos(phi);
}

std::int64_t SeededRng::binomial(std::int64_t trials, double p) {
  if (trials < 0) throw BadDimension("binomial: negative trial count");
  p = std::clamp(p, 0.0, 1.0);
  // Compare raw 53-bit draws against an integer threshold; avoids any
  // float rounding inside the loop.
  const auto threshold =
      static_cast<std::uint64_t>(std::llround(p * 0x1.0p53));
  std::int64_t hits = 0;
  for (std::int64_t i = 0; i < trials; ++i) {
    if ((engine_() >> 11) < threshold) ++hits;
  }
  return hits;
}

std::vector<std::int64_t> SeededRng::multinomial(
    std::int64_t trials, std::span<const double> weights) {
  const std::size_t bins = weights.size();
  if (bins == 0) throw BadDimension("multinomial: no bins");

  std::vector<double> w(bins);
  double total = 0.0;
  for (std::size_t i = 0; i < bins; ++i) {
    w[i] = std::max(weights[i], 0.0);
    total += w[i];
  }
  if (total <= 0.0) throw BadDimension("multinomial: zero total weight");

  std::vector<std::int64_t> counts(bins, 0);
  std::int64_t remaining = trials;
  double mass = total;
  for (std::size_t i = 0; i + 1 < bins; ++i) {
    if (remaining == 0 || mass <= 0.0) break;
    const std::int64_t k = binomial(remaining, w[i] / mass);
    counts[i] = k;
    remaining -= k;
    mass -= w[i];
  }
  counts[bins - 1] += remaining;
  return counts;
}

}  // namespace qst
