#include "qst/bootstrap.hpp"

#include <cmath>
#include <vector>

#include "qst/metrics.hpp"
#include "qst/mle.hpp"

namespace qst {

BootstrapReport bootstrap_fidelity(const CountTable& counts,
                                   const BasisFamily& family,
                                   const DensityMatrix& truth, int resamples,
                                   std::uint64_t seed) {
  if (resamples < 2)
    throw Error(ErrorCategory::validation, "bootstrap needs resamples >= 2");
  if (counts.dim() != family.dim || truth.dim() != counts.dim())
    throw DimensionMismatch("bootstrap input dimensions differ");

  const ProbabilityTable empirical = frequencies(counts);
  std::vector<double> fidelities;
  fidelities.reserve(resamples);
  int failed = 0;
  for (int r = 0; r < resamples; ++r) {
    try {
      const CountTable redrawn =
          sample_counts(empirical, counts.shots_per_basis(), seed + r);
      const MleResult fit = mle_reconstruct(redrawn, family);
      fidelities.push_back(fidelity(fit.estimate, truth));
    } catch (const Error&) {
      ++failed;
    }
  }
  if (fidelities.size() < 2)
    throw Error(ErrorCategory::numerical,
                "bootstrap: fewer than two resamples survived");

  const auto n = static_cast<double>(fidelities.size());
  double mean = 0.0;
  for (double f : fidelities) mean += f;
  mean /= n;
  double var = 0.0;
  for (double f : fidelities) var += (f - mean) * (f - mean);
  var /= (n - 1.0);

  return BootstrapReport{mean, std::sqrt(var), resamples, failed, seed};
}

void to_json(nlohmann::json& j, const BootstrapReport& report) {
  j = nlohmann::json{{"point_estimate", report.point_estimate},
                     {"std_dev", report.std_dev},
                     {"resamples", report.resamples},
                     {"failed_resamples", report.failed_resamples},
                     {"seed", report.seed}};
}

}  // namespace qst
