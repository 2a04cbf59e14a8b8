#pragma once

#include <Eigen/Dense>
#include <utility>

#include "qst/bases.hpp"
#include "qst/born.hpp"
#include "qst/errors.hpp"

namespace qst {

// Smallest singular value below which the transfer system counts as
// rank-deficient rather than double-precision noise.
inline constexpr double kSingularTol = 1e-8;

// Index conventions shared by build_transfer and q_from_probabilities:
// rows are twist-major over (j, k) with k = 0..d-2; columns enumerate the
// ordered off-diagonal pairs (a, b), a != b, lexicographically by a then b.
Eigen::Index transfer_row_index(Eigen::Index d, Eigen::Index j, Eigen::Index k);
Eigen::Index transfer_col_index(Eigen::Index d, Eigen::Index a, Eigen::Index b);
std::pair<Eigen::Index, Eigen::Index> transfer_col_pair(Eigen::Index d,
                                                        Eigen::Index index);

// The d(d-1) x d(d-1) linear map from the off-diagonal entries of rho to the
// centered probabilities q, with entry at (row (j,k), col (a,b)) equal to
// omega^{-k(a-b)} * exp(-i j (theta1[a] - theta1[b])).
struct TransferSystem {
  Eigen::Index dim;
  Eigen::MatrixXcd matrix;
  double smallest_singular_value;
  double largest_singular_value;
};

TransferSystem build_transfer(const PhaseSchedule& s);

// q_k^(j) = d * p_k^(j) - 1 over the d Fourier-family rows, dropping the
// dependent outcome k = d-1 from each row. Length d(d-1).
Eigen::VectorXd q_from_probabilities(const ProbabilityTable& table);

// Raw linear inversion: diagonal from row 0, off-diagonals from solving
// T g = q. Never repairs unphysical output; callers route finite-shot
// results through project_to_physical or the MLE.
struct LinearEstimate {
  Eigen::MatrixXcd matrix;
  // max |g(a,b) - conj(g(b,a))| before the Hermitian averaging was applied
  double asymmetry_norm;
};

LinearEstimate linear_reconstruct(const ProbabilityTable& table,
                                  const TransferSystem& transfer);

}  // namespace qst
