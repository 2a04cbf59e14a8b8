#pragma once

#include <cstdint>

#include "qst/bases.hpp"
#include "qst/born.hpp"
#include "qst/density_matrix.hpp"

#include <json.hpp>

namespace qst {

struct BootstrapReport {
  double point_estimate;  // mean fidelity over successful resamples
  double std_dev;         // sample standard deviation over the same
  int resamples;          // requested
  int failed_resamples;   // dropped because their reconstruction threw
  std::uint64_t seed;
};

// Statistical spread of the MLE fidelity: each resample redraws every basis
// row multinomially from the observed frequencies (same shot count), runs the
// full MLE reconstruction, and scores it against `truth`. Resample r uses
// seed + r, so reports are deterministic per seed.
BootstrapReport bootstrap_fidelity(const CountTable& counts,
                                   const BasisFamily& family,
                                   const DensityMatrix& truth, int resamples,
                                   std::uint64_t seed);

void to_json(nlohmann::json& j, const BootstrapReport& report);

}  // namespace qst
