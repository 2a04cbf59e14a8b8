#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "qst/bases.hpp"
#include "qst/density_matrix.hpp"
#include "qst/errors.hpp"

#include <json.hpp>

namespace qst {

using CountMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

// (d+1) x d grid of outcome probabilities. Row 0 is the computational basis,
// row j+1 the Fourier basis under twist j. Checked at construction: entries
// in [0, 1] within 1e-12, rows summing to 1 within 1e-10.
class ProbabilityTable {
 public:
  explicit ProbabilityTable(Eigen::MatrixXd rows);

  Eigen::Index dim() const { return rows_.cols(); }
  const Eigen::MatrixXd& rows() const { return rows_; }

 private:
  Eigen::MatrixXd rows_;
};

// (d+1) x d grid of shot counts with the same row layout. Every row sums to
// exactly shots_per_basis.
class CountTable {
 public:
  CountTable(std::int64_t shots_per_basis, CountMatrix counts);

  Eigen::Index dim() const { return counts_.cols(); }
  std::int64_t shots_per_basis() const { return shots_; }
  const CountMatrix& counts() const { return counts_; }

 private:
  std::int64_t shots_;
  CountMatrix counts_;
};

// Exact Born-rule table: row 0 holds the diagonal of rho, row j+1 entry k is
// <psi_k^(j)| rho |psi_k^(j)>. The sandwich must come out real to 1e-12.
ProbabilityTable born_probabilities(const DensityMatrix& rho,
                                    const BasisFamily& family);

// Draws each row as one multinomial(shots, row) sample from a single seeded
// stream, rows in order. Deterministic per (table, shots, seed).
CountTable sample_counts(const ProbabilityTable& table, std::int64_t shots,
                         std::uint64_t seed);

// Entrywise counts / shots.
ProbabilityTable frequencies(const CountTable& counts);

// JSON formats:
//   counts:        {"d": int, "shots": int, "counts": [[int]]}
//   probabilities: {"d": int, "probs": [[float]]}
// both with d+1 rows of d entries, row 0 computational.
void to_json(nlohmann::json& j, const CountTable& counts);
CountTable counts_from_json(const nlohmann::json& j);
void to_json(nlohmann::json& j, const ProbabilityTable& table);
ProbabilityTable probabilities_from_json(const nlohmann::json& j);

}  // namespace qst
