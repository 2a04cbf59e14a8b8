#include "qst/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace qst {

namespace {

void require_same_dim(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw DimensionMismatch("states have different dimensions");
}

Eigen::MatrixXcd hermitian_sqrt(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(m);
  const Eigen::VectorXd lambda = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * lambda.asDiagonal() * eig.eigenvectors().adjoint();
}

}  // namespace

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma);
  const Eigen::MatrixXcd root = hermitian_sqrt(rho.matrix());
  Eigen::MatrixXcd inner = root * sigma.matrix() * root;
  inner = 0.5 * (inner + inner.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(inner,
                                                      Eigen::EigenvaluesOnly);
  const double f = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  if (!(f <= 1.0 + 1e-9))
    throw Error(ErrorCategory::numerical, "fidelity overshoots 1 beyond 1e-9");
  return std::clamp(f, 0.0, 1.0);
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(
      rho.matrix() - sigma.matrix(), Eigen::EigenvaluesOnly);
  return std::clamp(0.5 * eig.eigenvalues().cwiseAbs().sum(), 0.0, 1.0);
}

double purity(const DensityMatrix& rho) {
  return (rho.matrix() * rho.matrix()).trace().real();
}

}  // namespace qst
