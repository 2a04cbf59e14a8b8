#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qst/errors.hpp"

#include <json.hpp>

namespace qst {

// Tolerance for comparing phase differences modulo 2*pi.
inline constexpr double kAngularTol = 1e-9;

// Wrapped angular distance |((x - y + pi) mod 2pi) - pi|, in [0, pi].
// Floored modulo, so the +-pi seam compares as coincident.
double wrapped_angle_distance(double x, double y);

// Base phases theta_m for the first twist; the j-th twist uses j * theta_m
// (and j = 0 means no twist). theta1 has one entry per level m = 0..d-1.
struct PhaseSchedule {
  Eigen::Index dim;
  Eigen::VectorXd theta1;
};

// Phases of the j-th diagonal twist operator, j * theta1 entrywise.
Eigen::VectorXd twist_phases(const PhaseSchedule& s, int j);

// A pair of outcome indices whose phase differences collide for offset c.
struct ScheduleViolation {
  int c;
  int t;
  int t_prime;
};

struct ScheduleReport {
  std::vector<ScheduleViolation> violations;
  bool valid() const { return violations.empty(); }
};

// The d+1 projective measurement bases. bases[0] is the computational basis
// (identity); bases[j+1] holds the twisted Fourier basis for twist j, with
// row k storing the amplitudes of the k-th basis vector: entry (k, l) =
// exp(i * j * theta1[l]) * omega^{kl} / sqrt(d), omega = exp(2 pi i / d).
// The generating schedule is kept so downstream stages can rebuild the
// matching transfer system.
struct BasisFamily {
  Eigen::Index dim;
  PhaseSchedule schedule;
  std::vector<Eigen::MatrixXcd> bases;
};

// DFT matrix with entry (k, l) = omega^{kl} / sqrt(d). Throws BadDimension
// for dim < 2.
Eigen::MatrixXcd fourier_basis(Eigen::Index dim);

// The schedule used in the experiment: theta1[m] = 0.5415 * m^2. The
// constant is taken as given; no derivation is known.
PhaseSchedule default_schedule(Eigen::Index dim);

// Checks the pairwise-distinctness condition that makes the transfer matrix
// invertible: for every offset c = 1..d-1 the d differences
// D_t = theta1[t] - theta1[(t+c) mod d] must be pairwise distinct mod 2*pi.
// Every colliding triple (c, t, t') is listed; validity is a result, not an
// error.
ScheduleReport validate_schedule(const PhaseSchedule& s);

// Builds all d+1 bases. Validity of the schedule is not required; callers
// may deliberately build a degenerate family.
BasisFamily build_basis_family(const PhaseSchedule& s);

// JSON format: {"d": int, "theta1": [floats]}.
void to_json(nlohmann::json& j, const PhaseSchedule& s);
PhaseSchedule schedule_from_json(const nlohmann::json& j);

}  // namespace qst
