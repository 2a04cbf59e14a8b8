#pragma once

#include <optional>
#include <vector>

#include "qst/bases.hpp"
#include "qst/born.hpp"
#include "qst/density_matrix.hpp"

namespace qst {

// Outcome probabilities are clamped at this floor before entering any log.
inline constexpr double kLikelihoodFloor = 1e-15;

struct MleOptions {
  int max_iter = 2000;
  // trace-distance threshold between successive iterates
  double tol = 1e-10;
  // starting point; when absent, the projected linear reconstruction of the
  // observed frequencies is used
  std::optional<DensityMatrix> init;
};

struct MleResult {
  DensityMatrix estimate;
  double log_likelihood;
  int iterations;
  bool converged;
  double final_step_norm;
  // log-likelihood of the init followed by each accepted iterate
  std::vector<double> ll_history;
  // worst invariant violation seen across all iterates:
  // max(asymmetry, |tr - 1|, negative eigenvalue magnitude)
  double max_physicality_defect;
};

// Multinomial log-likelihood sum n_cell * ln(p_cell(rho)) over all
// (basis, outcome) cells. Zero-count cells contribute nothing; probabilities
// are clamped below at kLikelihoodFloor, so the result is always finite.
double log_likelihood(const DensityMatrix& rho, const CountTable& counts,
                      const BasisFamily& family);

// Fixed-point maximum-likelihood iteration: R(rho) is the likelihood-weighted
// sum of outcome projectors, and each step maps rho to the trace-normalized
// R rho R. The log-likelihood must be non-decreasing (within 1e-9) at every
// step; a numerical decrease aborts with converged = false rather than
// damping. Non-convergence within max_iter is reported, not thrown.
MleResult mle_reconstruct(const CountTable& counts, const BasisFamily& family,
                          const MleOptions& options = {});

}  // namespace qst
