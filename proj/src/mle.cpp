#include "qst/mle.hpp"

#include <algorithm>
#include <cmath>

#include "qst/metrics.hpp"
#include "qst/transfer.hpp"

namespace qst {

namespace {

constexpr double kMonotonicitySlack = 1e-9;

void require_same_dim(const CountTable& counts, const BasisFamily& family) {
  if (counts.dim() != family.dim ||
      family.bases.size() != static_cast<std::size_t>(family.dim + 1))
    throw DimensionMismatch("count table and basis family dimensions differ");
}

// Likelihood-weighted sum of outcome projectors, w_cell = n_cell / p_cell.
Eigen::MatrixXcd r_operator(const Eigen::MatrixXcd& rho,
                            const CountTable& counts,
                            const BasisFamily& family) {
  const Eigen::Index d = counts.dim();
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(d, d);

  // Computational basis: projectors are diagonal.
  for (Eigen::Index k = 0; k < d; ++k) {
    const auto n = counts.counts()(0, k);
    if (n == 0) continue;
    const double p = std::max(rho(k, k).real(), kLikelihoodFloor);
    r(k, k) += static_cast<double>(n) / p;
  }

  for (Eigen::Index b = 1; b <= d; ++b) {
    const Eigen::MatrixXcd& u = family.bases[b];
    for (Eigen::Index k = 0; k < d; ++k) {
      const auto n = counts.counts()(b, k);
      if (n == 0) continue;
      const double p = std::max(
          (u.row(k).conjugate() * rho * u.row(k).transpose())(0).real(),
          kLikelihoodFloor);
      r.noalias() += (static_cast<double>(n) / p) *
                     (u.row(k).transpose() * u.row(k).conjugate());
    }
  }
  return r;
}

double log_likelihood_raw(const Eigen::MatrixXcd& rho,
                          const CountTable& counts,
                          const BasisFamily& family) {
  const Eigen::Index d = counts.dim();
  double ll = 0.0;
  for (Eigen::Index k = 0; k < d; ++k) {
    const auto n = counts.counts()(0, k);
    if (n == 0) continue;
    ll += static_cast<double>(n) *
          std::log(std::max(rho(k, k).real(), kLikelihoodFloor));
  }
  for (Eigen::Index b = 1; b <= d; ++b) {
    const Eigen::MatrixXcd& u = family.bases[b];
    for (Eigen::Index k = 0; k < d; ++k) {
      const auto n = counts.counts()(b, k);
      if (n == 0) continue;
      const double p =
          (u.row(k).conjugate() * rho * u.row(k).transpose())(0).real();
      ll += static_cast<double>(n) * std::log(std::max(p, kLikelihoodFloor));
    }
  }
  return ll;
}

}  // namespace

double log_likelihood(const DensityMatrix& rho, const CountTable& counts,
                      const BasisFamily& family) {
  require_same_dim(counts, family);
  if (rho.dim() != counts.dim())
    throw DimensionMismatch("state and count table dimensions differ");
  return log_likelihood_raw(rho.matrix(), counts, family);
}

MleResult mle_reconstruct(const CountTable& counts, const BasisFamily& family,
                          const MleOptions& options) {
  require_same_dim(counts, family);
  if (options.max_iter < 1)
    throw Error(ErrorCategory::validation, "max_iter must be >= 1");
  if (!(options.tol > 0.0))
    throw Error(ErrorCategory::validation, "tol must be positive");

  DensityMatrix rho = [&] {
    if (options.init) {
      if (options.init->dim() != counts.dim())
        throw DimensionMismatch("init state dimension differs");
      return *options.init;
    }
    const TransferSystem transfer = build_transfer(family.schedule);
    const LinearEstimate linear =
        linear_reconstruct(frequencies(counts), transfer);
    return project_to_physical(linear.matrix);
  }();

  MleResult result{rho, log_likelihood(rho, counts, family), 0, false, 0.0,
                   {},  0.0};
  result.ll_history.push_back(result.log_likelihood);

  for (int iter = 1; iter <= options.max_iter; ++iter) {
    const Eigen::MatrixXcd r = r_operator(rho.matrix(), counts, family);
    Eigen::MatrixXcd next = r * rho.matrix() * r;
    next /= next.trace().real();

    const StateDiagnostics diag = diagnose_density(next);
    const double defect =
        std::max({diag.asymmetry, diag.trace_error,
                  std::max(0.0, -diag.min_eigenvalue)});
    result.max_physicality_defect =
        std::max(result.max_physicality_defect, defect);
    if (defect >= kStateTol)
      throw Error(ErrorCategory::numerical,
                  "MLE iterate violated density-matrix invariants");

    const double ll_next = log_likelihood_raw(next, counts, family);
    if (ll_next < result.log_likelihood - kMonotonicitySlack) {
      // Numerical non-monotonicity: keep the previous (better) iterate.
      result.converged = false;
      return result;
    }

    // Round off the product's fp asymmetry before the next round.
    next = 0.5 * (next + next.adjoint().eval());
    const DensityMatrix candidate = validate_density(next);
    const double step = trace_distance(candidate, rho);

    rho = candidate;
    result.estimate = rho;
    result.log_likelihood = ll_next;
    result.ll_history.push_back(ll_next);
    result.iterations = iter;
    result.final_step_norm = step;
    if (step < options.tol) {
      result.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace qst
