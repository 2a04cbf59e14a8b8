#include "qst/density_matrix.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include "qst/rng.hpp"

namespace qst {

namespace {

const char* defect_name(StateDefect kind) {
  switch (kind) {
    case StateDefect::not_hermitian: return "NotHermitian";
    case StateDefect::trace_not_one: return "TraceNotOne";
    case StateDefect::not_psd: return "NotPSD";
  }
  return "?";
}

std::string describe(const std::vector<DefectReport>& defects) {
  std::ostringstream os;
  os << "invalid density matrix:";
  for (const auto& d : defects)
    os << " " << defect_name(d.kind) << "(" << d.magnitude << ")";
  return os.str();
}

void require_square(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols())
    throw DimensionMismatch("matrix is not square");
  if (m.rows() < 2) throw BadDimension("dimension must be at least 2");
}

}  // namespace

InvalidState::InvalidState(std::vector<DefectReport> defects)
    : Error(ErrorCategory::validation, describe(defects)),
      defects_(std::move(defects)) {}

StateDiagnostics diagnose_density(const Eigen::MatrixXcd& m) {
  require_square(m);
  StateDiagnostics diag{};
  diag.asymmetry = (m - m.adjoint()).cwiseAbs().maxCoeff();
  diag.trace_error = std::abs(m.trace() - std::complex<double>(1.0));

  // Spectrum of the Hermitian part; for Hermitian input this is the spectrum
  // of m itself.
  const Eigen::MatrixXcd herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(herm,
                                                      Eigen::EigenvaluesOnly);
  diag.min_eigenvalue = eig.eigenvalues().minCoeff();
  return diag;
}

std::vector<DefectReport> check_density(const Eigen::MatrixXcd& m) {
  const StateDiagnostics diag = diagnose_density(m);
  std::vector<DefectReport> defects;
  if (!(diag.asymmetry < kStateTol))
    defects.push_back({StateDefect::not_hermitian, diag.asymmetry});
  if (!(diag.trace_error < kStateTol))
    defects.push_back({StateDefect::trace_not_one, diag.trace_error});
  if (!(diag.min_eigenvalue >= -kStateTol))
    defects.push_back({StateDefect::not_psd, -diag.min_eigenvalue});
  return defects;
}

DensityMatrix validate_density(const Eigen::MatrixXcd& m) {
  auto defects = check_density(m);
  if (!defects.empty()) throw InvalidState(std::move(defects));
  return DensityMatrix(m);
}

DensityMatrix random_density(Eigen::Index dim, Eigen::Index rank,
                             std::uint64_t seed) {
  if (dim < 2) throw BadDimension("dimension must be at least 2");
  if (rank < 1 || rank > dim)
    throw BadRank("rank must lie in [1, dim]");

  SeededRng rng(seed);
  Eigen::MatrixXcd g(dim, rank);
  for (Eigen::Index a = 0; a < dim; ++a)
    for (Eigen::Index r = 0; r < rank; ++r)
      g(a, r) = std::complex<double>(rng.gaussian(), rng.gaussian());

  Eigen::MatrixXcd rho = g * g.adjoint();
  rho /= rho.trace().real();
  // Round off the solver's tiny Hermiticity error so validation is exact.
  rho = 0.5 * (rho + rho.adjoint().eval());
  return validate_density(rho);
}

DensityMatrix project_to_physical(const Eigen::MatrixXcd& m) {
  double ignored = 0.0;
  return project_to_physical(m, ignored);
}

DensityMatrix project_to_physical(const Eigen::MatrixXcd& m,
                                  double& asymmetry_out) {
  require_square(m);
  asymmetry_out = (m - m.adjoint()).cwiseAbs().maxCoeff();

  const Eigen::MatrixXcd herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(herm);
  Eigen::VectorXd lambda = eig.eigenvalues().cwiseMax(0.0);
  const double total = lambda.sum();
  if (total <= 0.0)
    throw ZeroTrace("projection clipped every eigenvalue to zero");
  lambda /= total;

  Eigen::MatrixXcd rho = eig.eigenvectors() * lambda.asDiagonal() *
                         eig.eigenvectors().adjoint();
  rho = 0.5 * (rho + rho.adjoint().eval());
  return validate_density(rho);
}

void to_json(nlohmann::json& j, const DensityMatrix& rho) {
  const auto d = rho.dim();
  std::vector<std::vector<double>> re(d, std::vector<double>(d));
  std::vector<std::vector<double>> im(d, std::vector<double>(d));
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) {
      re[a][b] = rho.matrix()(a, b).real();
      im[a][b] = rho.matrix()(a, b).imag();
    }
  }
  j = nlohmann::json{{"d", d}, {"re", re}, {"im", im}};
}

DensityMatrix density_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("d") || !j.contains("re") ||
      !j.contains("im"))
    throw SchemaError("density matrix JSON needs fields d, re, im");

  Eigen::Index d = 0;
  try {
    d = j.at("d").get<Eigen::Index>();
  } catch (const nlohmann::json::exception&) {
    throw SchemaError("density matrix JSON: d must be an integer");
  }
  if (d < 2) throw SchemaError("density matrix JSON: d must be >= 2");

  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (!re.is_array() || !im.is_array() ||
      static_cast<Eigen::Index>(re.size()) != d ||
      static_cast<Eigen::Index>(im.size()) != d)
    throw SchemaError("density matrix JSON: re/im must be d rows");

  Eigen::MatrixXcd m(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    const auto& re_row = re.at(a);
    const auto& im_row = im.at(a);
    if (!re_row.is_array() || !im_row.is_array() ||
        static_cast<Eigen::Index>(re_row.size()) != d ||
        static_cast<Eigen::Index>(im_row.size()) != d)
      throw SchemaError("density matrix JSON: rows must have d entries");
    for (Eigen::Index b = 0; b < d; ++b) {
      try {
        m(a, b) = std::complex<double>(re_row.at(b).get<double>(),
                                       im_row.at(b).get<double>());
      } catch (const nlohmann::json::exception&) {
        throw SchemaError("density matrix JSON: entries must be numbers");
      }
    }
  }
  try {
    return validate_density(m);
  } catch (const InvalidState& e) {
    throw SchemaError(std::string("density matrix JSON: ") + e.what());
  }
}

}  // namespace qst
