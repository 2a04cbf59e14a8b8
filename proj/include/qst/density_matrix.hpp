#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "qst/errors.hpp"

#include <json.hpp>

namespace qst {

// Validity tolerances for density matrices (absolute, entrywise / spectral).
inline constexpr double kStateTol = 1e-10;

enum class StateDefect { not_hermitian, trace_not_one, not_psd };

struct DefectReport {
  StateDefect kind;
  double magnitude;  // size of the violation
};

// A d x d Hermitian, trace-one, positive semidefinite matrix. Instances are
// immutable and only constructible through the checked factories below, so
// holding a DensityMatrix is proof the invariants passed.
class DensityMatrix {
 public:
  Eigen::Index dim() const { return matrix_.rows(); }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }

 private:
  explicit DensityMatrix(Eigen::MatrixXcd m) : matrix_(std::move(m)) {}

  friend DensityMatrix validate_density(const Eigen::MatrixXcd& m);

  Eigen::MatrixXcd matrix_;
};

class InvalidState : public Error {
 public:
  explicit InvalidState(std::vector<DefectReport> defects);

  const std::vector<DefectReport>& defects() const { return defects_; }

 private:
  std::vector<DefectReport> defects_;
};

// Raw magnitudes behind the three invariants, reported whether or not they
// pass: max entrywise |m - m^dag|, |tr(m) - 1|, and the smallest eigenvalue
// of the Hermitian part.
struct StateDiagnostics {
  double asymmetry;
  double trace_error;
  double min_eigenvalue;
};

StateDiagnostics diagnose_density(const Eigen::MatrixXcd& m);

// Diagnostic pass over the three invariants; empty result means valid.
std::vector<DefectReport> check_density(const Eigen::MatrixXcd& m);

// Checked constructor: throws InvalidState listing every failed invariant.
DensityMatrix validate_density(const Eigen::MatrixXcd& m);

// Ginibre-ensemble random mixed state: G (dim x rank) with i.i.d. complex
// Gaussian entries, returned as G G^dag / tr(G G^dag). Deterministic per
// (dim, rank, seed).
DensityMatrix random_density(Eigen::Index dim, Eigen::Index rank,
                             std::uint64_t seed);

// Repair of a near-physical matrix: Hermitize, clip negative eigenvalues to
// zero, renormalize the trace to one. Throws ZeroTrace if nothing survives
// the clip. The overload reports the pre-Hermitization asymmetry
// max |m(a,b) - conj(m(b,a))|.
DensityMatrix project_to_physical(const Eigen::MatrixXcd& m);
DensityMatrix project_to_physical(const Eigen::MatrixXcd& m,
                                  double& asymmetry_out);

// JSON format: {"d": int, "re": [[...]], "im": [[...]]}, row-major d x d.
// Readers reject dimension mismatches.
void to_json(nlohmann::json& j, const DensityMatrix& rho);
DensityMatrix density_from_json(const nlohmann::json& j);

}  // namespace qst
