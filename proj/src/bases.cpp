#include "qst/bases.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace qst {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_schedule(const PhaseSchedule& s) {
  if (s.dim < 2) throw BadDimension("schedule dimension must be at least 2");
  if (s.theta1.size() != s.dim)
    throw DimensionMismatch("schedule: theta1 length does not match d");
}

}  // namespace

double wrapped_angle_distance(double x, double y) {
  double r = std::fmod(x - y + std::numbers::pi, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return std::abs(r - std::numbers::pi);
}

Eigen::VectorXd twist_phases(const PhaseSchedule& s, int j) {
  require_schedule(s);
  if (j == 0) return Eigen::VectorXd::Zero(s.dim);
  return static_cast<double>(j) * s.theta1;
}

Eigen::MatrixXcd fourier_basis(Eigen::Index dim) {
  if (dim < 2) throw BadDimension("fourier basis needs dim >= 2");
  const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
  Eigen::MatrixXcd f(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    for (Eigen::Index l = 0; l < dim; ++l) {
      // Reduce the exponent mod d before taking the angle.
      const auto e = static_cast<double>((k * l) % dim);
      f(k, l) = std::polar(norm, kTwoPi * e / static_cast<double>(dim));
    }
  }
  return f;
}

PhaseSchedule default_schedule(Eigen::Index dim) {
  if (dim < 2) throw BadDimension("schedule needs dim >= 2");
  Eigen::VectorXd theta1(dim);
  for (Eigen::Index m = 0; m < dim; ++m)
    theta1[m] = 0.5415 * static_cast<double>(m * m);
  return PhaseSchedule{dim, std::move(theta1)};
}

ScheduleReport validate_schedule(const PhaseSchedule& s) {
  require_schedule(s);
  const int d = static_cast<int>(s.dim);
  ScheduleReport report;
  for (int c = 1; c < d; ++c) {
    Eigen::VectorXd diff(d);
    for (int t = 0; t < d; ++t)
      diff[t] = s.theta1[t] - s.theta1[(t + c) % d];
    for (int t = 0; t < d; ++t)
      for (int tp = t + 1; tp < d; ++tp)
        if (wrapped_angle_distance(diff[t], diff[tp]) < kAngularTol)
          report.violations.push_back({c, t, tp});
  }
  return report;
}

BasisFamily build_basis_family(const PhaseSchedule& s) {
  require_schedule(s);
  const Eigen::Index d = s.dim;
  const Eigen::MatrixXcd fourier = fourier_basis(d);

  BasisFamily family{d, s, {}};
  family.bases.reserve(d + 1);
  family.bases.push_back(Eigen::MatrixXcd::Identity(d, d));
  family.bases.push_back(fourier);  // twist j = 0
  for (int j = 1; j < d; ++j) {
    const Eigen::VectorXd theta = twist_phases(s, j);
    Eigen::MatrixXcd u(d, d);
    for (Eigen::Index k = 0; k < d; ++k)
      for (Eigen::Index l = 0; l < d; ++l)
        u(k, l) = std::polar(1.0, theta[l]) * fourier(k, l);
    family.bases.push_back(std::move(u));
  }

  for (const auto& u : family.bases) {
    const double defect =
        (u * u.adjoint() - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();
    if (!(defect < 1e-10))
      throw Error(ErrorCategory::numerical, "basis lost unitarity");
  }
  return family;
}

void to_json(nlohmann::json& j, const PhaseSchedule& s) {
  std::vector<double> theta(s.theta1.data(), s.theta1.data() + s.theta1.size());
  j = nlohmann::json{{"d", s.dim}, {"theta1", theta}};
}

PhaseSchedule schedule_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("d") || !j.contains("theta1"))
    throw SchemaError("schedule JSON needs fields d, theta1");
  Eigen::Index d = 0;
  try {
    d = j.at("d").get<Eigen::Index>();
  } catch (const nlohmann::json::exception&) {
    throw SchemaError("schedule JSON: d must be an integer");
  }
  if (d < 2) throw SchemaError("schedule JSON: d must be >= 2");
  const auto& arr = j.at("theta1");
  if (!arr.is_array() || static_cast<Eigen::Index>(arr.size()) != d)
    throw SchemaError("schedule JSON: theta1 must have d entries");
  Eigen::VectorXd theta1(d);
  for (Eigen::Index m = 0; m < d; ++m) {
    try {
      theta1[m] = arr.at(m).get<double>();
    } catch (const nlohmann::json::exception&) {
      throw SchemaError("schedule JSON: theta1 entries must be numbers");
    }
  }
  return PhaseSchedule{d, std::move(theta1)};
}

}  // namespace qst
