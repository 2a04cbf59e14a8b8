#include "qst/born.hpp"

#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "qst/rng.hpp"

namespace qst {

ProbabilityTable::ProbabilityTable(Eigen::MatrixXd rows)
    : rows_(std::move(rows)) {
  const Eigen::Index d = rows_.cols();
  if (d < 2 || rows_.rows() != d + 1)
    throw DimensionMismatch("probability table must be (d+1) x d, d >= 2");
  if (!((rows_.array() >= -1e-12).all() && (rows_.array() <= 1.0 + 1e-12).all()))
    throw Error(ErrorCategory::validation,
                "probability table entry outside [0, 1]");
  for (Eigen::Index r = 0; r < rows_.rows(); ++r) {
    if (std::abs(rows_.row(r).sum() - 1.0) >= 1e-10)
      throw Error(ErrorCategory::validation,
                  "probability table row does not sum to 1");
  }
}

CountTable::CountTable(std::int64_t shots_per_basis, CountMatrix counts)
    : shots_(shots_per_basis), counts_(std::move(counts)) {
  const Eigen::Index d = counts_.cols();
  if (d < 2 || counts_.rows() != d + 1)
    throw DimensionMismatch("count table must be (d+1) x d, d >= 2");
  if (shots_ < 1)
    throw Error(ErrorCategory::validation, "shots_per_basis must be >= 1");
  if ((counts_.array() < 0).any())
    throw Error(ErrorCategory::validation, "negative count");
  for (Eigen::Index r = 0; r < counts_.rows(); ++r) {
    if (counts_.row(r).sum() != shots_)
      throw Error(ErrorCategory::validation,
                  "count table row does not sum to shots_per_basis");
  }
}

ProbabilityTable born_probabilities(const DensityMatrix& rho,
                                    const BasisFamily& family) {
  const Eigen::Index d = rho.dim();
  if (family.dim != d || family.bases.size() != static_cast<std::size_t>(d + 1))
    throw DimensionMismatch("state and basis family dimensions differ");

  Eigen::MatrixXd table(d + 1, d);
  table.row(0) = rho.matrix().diagonal().real();

  for (Eigen::Index b = 1; b <= d; ++b) {
    const Eigen::MatrixXcd& u = family.bases[b];
    for (Eigen::Index k = 0; k < d; ++k) {
      const std::complex<double> p =
          (u.row(k).conjugate() * rho.matrix() * u.row(k).transpose())(0);
      if (std::abs(p.imag()) >= 1e-12)
        throw Error(ErrorCategory::numerical,
                    "Born probability has nonzero imaginary part");
      table(b, k) = p.real();
    }
  }
  return ProbabilityTable(std::move(table));
}

CountTable sample_counts(const ProbabilityTable& table, std::int64_t shots,
                         std::uint64_t seed) {
  if (shots < 1)
    throw Error(ErrorCategory::validation, "sample_counts needs shots >= 1");
  const Eigen::Index d = table.dim();
  SeededRng rng(seed);
  CountMatrix counts(d + 1, d);
  std::vector<double> row(d);
  for (Eigen::Index r = 0; r <= d; ++r) {
    for (Eigen::Index k = 0; k < d; ++k) row[k] = table.rows()(r, k);
    const auto sample = rng.multinomial(shots, std::span<const double>(row));
    for (Eigen::Index k = 0; k < d; ++k) counts(r, k) = sample[k];
  }
  return CountTable(shots, std::move(counts));
}

ProbabilityTable frequencies(const CountTable& counts) {
  const double n = static_cast<double>(counts.shots_per_basis());
  return ProbabilityTable(counts.counts().cast<double>() / n);
}

void to_json(nlohmann::json& j, const CountTable& table) {
  const Eigen::Index d = table.dim();
  std::vector<std::vector<std::int64_t>> rows(d + 1,
                                              std::vector<std::int64_t>(d));
  for (Eigen::Index r = 0; r <= d; ++r)
    for (Eigen::Index k = 0; k < d; ++k) rows[r][k] = table.counts()(r, k);
  j = nlohmann::json{
      {"d", d}, {"shots", table.shots_per_basis()}, {"counts", rows}};
}

namespace {

// Shared shape walk for the two table formats.
template <typename Scalar, typename Matrix>
Matrix table_from_json(const nlohmann::json& j, const char* field,
                       const char* what) {
  if (!j.is_object() || !j.contains("d") || !j.contains(field))
    throw SchemaError(std::string(what) + " JSON needs fields d, " + field);
  Eigen::Index d = 0;
  try {
    d = j.at("d").get<Eigen::Index>();
  } catch (const nlohmann::json::exception&) {
    throw SchemaError(std::string(what) + " JSON: d must be an integer");
  }
  if (d < 2) throw SchemaError(std::string(what) + " JSON: d must be >= 2");
  const auto& rows = j.at(field);
  if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != d + 1)
    throw SchemaError(std::string(what) + " JSON: needs d+1 rows");
  Matrix m(d + 1, d);
  for (Eigen::Index r = 0; r <= d; ++r) {
    const auto& row = rows.at(r);
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d)
      throw SchemaError(std::string(what) + " JSON: rows must have d entries");
    for (Eigen::Index k = 0; k < d; ++k) {
      try {
        m(r, k) = row.at(k).get<Scalar>();
      } catch (const nlohmann::json::exception&) {
        throw SchemaError(std::string(what) + " JSON: bad entry type");
      }
    }
  }
  return m;
}

}  // namespace

CountTable counts_from_json(const nlohmann::json& j) {
  auto m = table_from_json<std::int64_t, CountMatrix>(j, "counts", "counts");
  std::int64_t shots = 0;
  try {
    shots = j.at("shots").get<std::int64_t>();
  } catch (const nlohmann::json::exception&) {
    throw SchemaError("counts JSON: shots must be an integer");
  }
  try {
    return CountTable(shots, std::move(m));
  } catch (const Error& e) {
    throw SchemaError(std::string("counts JSON: ") + e.what());
  }
}

void to_json(nlohmann::json& j, const ProbabilityTable& table) {
  const Eigen::Index d = table.dim();
  std::vector<std::vector<double>> rows(d + 1, std::vector<double>(d));
  for (Eigen::Index r = 0; r <= d; ++r)
    for (Eigen::Index k = 0; k < d; ++k) rows[r][k] = table.rows()(r, k);
  j = nlohmann::json{{"d", d}, {"probs", rows}};
}

ProbabilityTable probabilities_from_json(const nlohmann::json& j) {
  auto m =
      table_from_json<double, Eigen::MatrixXd>(j, "probs", "probabilities");
  try {
    return ProbabilityTable(std::move(m));
  } catch (const Error& e) {
    throw SchemaError(std::string("probabilities JSON: ") + e.what());
  }
}

}  // namespace qst
