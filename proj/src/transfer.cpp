#include "qst/transfer.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace qst {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

Eigen::Index transfer_row_index(Eigen::Index d, Eigen::Index j,
                                Eigen::Index k) {
  return j * (d - 1) + k;
}

Eigen::Index transfer_col_index(Eigen::Index d, Eigen::Index a,
                                Eigen::Index b) {
  return a * (d - 1) + b - (b > a ? 1 : 0);
}

std::pair<Eigen::Index, Eigen::Index> transfer_col_pair(Eigen::Index d,
                                                        Eigen::Index index) {
  const Eigen::Index a = index / (d - 1);
  const Eigen::Index r = index % (d - 1);
  return {a, r + (r >= a ? 1 : 0)};
}

TransferSystem build_transfer(const PhaseSchedule& s) {
  const Eigen::Index d = s.dim;
  if (d < 2) throw BadDimension("transfer needs dim >= 2");
  if (s.theta1.size() != d)
    throw DimensionMismatch("schedule: theta1 length does not match d");

  const Eigen::Index n = d * (d - 1);
  Eigen::MatrixXcd t(n, n);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index k = 0; k + 1 < d; ++k) {
      const Eigen::Index row = transfer_row_index(d, j, k);
      for (Eigen::Index col = 0; col < n; ++col) {
        const auto [a, b] = transfer_col_pair(d, col);
        const Eigen::Index e = ((-k * (a - b)) % d + d) % d;
        const double angle =
            kTwoPi * static_cast<double>(e) / static_cast<double>(d) -
            static_cast<double>(j) * (s.theta1[a] - s.theta1[b]);
        t(row, col) = std::polar(1.0, angle);
      }
    }
  }

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(t);
  const auto& sv = svd.singularValues();
  return TransferSystem{d, std::move(t), sv(sv.size() - 1), sv(0)};
}

Eigen::VectorXd q_from_probabilities(const ProbabilityTable& table) {
  const Eigen::Index d = table.dim();
  Eigen::VectorXd q(d * (d - 1));
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index k = 0; k + 1 < d; ++k)
      q(transfer_row_index(d, j, k)) =
          static_cast<double>(d) * table.rows()(j + 1, k) - 1.0;
  return q;
}

LinearEstimate linear_reconstruct(const ProbabilityTable& table,
                                  const TransferSystem& transfer) {
  const Eigen::Index d = table.dim();
  if (transfer.dim != d)
    throw DimensionMismatch("probability table and transfer system disagree");
  if (!(transfer.smallest_singular_value > kSingularTol))
    throw SingularTransfer("transfer matrix is numerically singular",
                           transfer.smallest_singular_value,
                           transfer.largest_singular_value);

  const Eigen::VectorXcd q = q_from_probabilities(table).cast<std::complex<double>>();
  const Eigen::VectorXcd g = transfer.matrix.partialPivLu().solve(q);

  Eigen::MatrixXcd estimate(d, d);
  estimate.diagonal() = table.rows().row(0).transpose().cast<std::complex<double>>();
  for (Eigen::Index col = 0; col < d * (d - 1); ++col) {
    const auto [a, b] = transfer_col_pair(d, col);
    estimate(a, b) = g(col);
  }

  const double asymmetry =
      (estimate - estimate.adjoint().eval()).cwiseAbs().maxCoeff();
  estimate = 0.5 * (estimate + estimate.adjoint().eval());
  return LinearEstimate{std::move(estimate), asymmetry};
}

}  // namespace qst
