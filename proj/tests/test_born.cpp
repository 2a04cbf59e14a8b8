#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "oracles.hpp"
#include "qst/born.hpp"
#include "qst/density_matrix.hpp"
#include "qst/rng.hpp"

using namespace qst;

namespace {

PhaseSchedule random_schedule(Eigen::Index d, std::uint64_t seed) {
  SeededRng rng(seed);
  Eigen::VectorXd theta1(d);
  for (Eigen::Index m = 0; m < d; ++m) theta1[m] = rng.uniform() * 6.28;
  return PhaseSchedule{d, std::move(theta1)};
}

}  // namespace

TEST_CASE("born_probabilities") {
  SUBCASE("maximally mixed state is flat in every basis") {
    const auto rho = validate_density(Eigen::MatrixXcd::Identity(6, 6) / 6.0);
    const auto table =
        born_probabilities(rho, build_basis_family(default_schedule(6)));
    CHECK((table.rows().array() - 1.0 / 6.0).abs().maxCoeff() < 1e-12);
  }

  SUBCASE("|0><0| is unbiased against the Fourier basis") {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    m(0, 0) = 1.0;
    const auto table = born_probabilities(
        validate_density(m), build_basis_family(default_schedule(2)));
    CHECK(table.rows()(0, 0) == doctest::Approx(1.0));
    CHECK(table.rows()(1, 0) == doctest::Approx(0.5));
    CHECK(table.rows()(1, 1) == doctest::Approx(0.5));
  }

  SUBCASE("a Fourier basis state lands on its own outcome") {
    const auto family = build_basis_family(default_schedule(4));
    const Eigen::VectorXcd psi0 = family.bases[1].row(0).transpose();
    const auto rho = validate_density(psi0 * psi0.adjoint());
    const auto table = born_probabilities(rho, family);
    CHECK(table.rows()(1, 0) == doctest::Approx(1.0).epsilon(1e-12));
    for (int k = 1; k < 4; ++k)
      CHECK(std::abs(table.rows()(1, k)) < 1e-12);
  }

  SUBCASE("row sums are 1 for random states, d = 2..8") {
    for (Eigen::Index d = 2; d <= 8; ++d) {
      const auto rho = random_density(d, d / 2 + 1, 31 + d);
      const auto table =
          born_probabilities(rho, build_basis_family(random_schedule(d, d)));
      for (Eigen::Index r = 0; r <= d; ++r)
        CHECK(std::abs(table.rows().row(r).sum() - 1.0) < 1e-10);
    }
  }

  SUBCASE("sandwich equals the explicit double-sum expansion") {
    for (Eigen::Index d = 2; d <= 6; ++d) {
      const auto s = random_schedule(d, 77 + d);
      const auto rho = random_density(d, d, 55 + d);
      const auto table = born_probabilities(rho, build_basis_family(s));
      for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index k = 0; k < d; ++k)
          CHECK(std::abs(table.rows()(j + 1, k) -
                         oracle::expansion_probability(rho.matrix(), s.theta1,
                                                       j, k)) < 1e-10);
    }
  }

  SUBCASE("dimension mismatch") {
    const auto rho = random_density(3, 1, 0);
    CHECK_THROWS_AS(
        born_probabilities(rho, build_basis_family(default_schedule(4))),
        DimensionMismatch);
  }
}

TEST_CASE("probability table validation") {
  Eigen::MatrixXd bad(3, 2);
  bad << 0.5, 0.5, 0.9, 0.2, 0.5, 0.5;
  CHECK_THROWS_AS(ProbabilityTable{bad}, Error);

  Eigen::MatrixXd negative(3, 2);
  negative << 1.1, -0.1, 0.5, 0.5, 0.5, 0.5;
  CHECK_THROWS_AS(ProbabilityTable{negative}, Error);
}

TEST_CASE("sample_counts") {
  SUBCASE("degenerate rows sample deterministically") {
    Eigen::MatrixXd rows(3, 2);
    rows << 1.0, 0.0, 1.0, 0.0, 0.0, 1.0;
    const auto counts = sample_counts(ProbabilityTable{rows}, 1000, 42);
    CHECK(counts.counts()(0, 0) == 1000);
    CHECK(counts.counts()(0, 1) == 0);
    CHECK(counts.counts()(2, 0) == 0);
    CHECK(counts.counts()(2, 1) == 1000);
  }

  SUBCASE("uniform d=6 rows stay within 5 sigma of N/6") {
    const auto rho = validate_density(Eigen::MatrixXcd::Identity(6, 6) / 6.0);
    const auto table =
        born_probabilities(rho, build_basis_family(default_schedule(6)));
    const std::int64_t shots = 600000;
    const auto counts = sample_counts(table, shots, 7);
    const double p = 1.0 / 6.0;
    const double sigma = std::sqrt(double(shots) * p * (1.0 - p));
    for (Eigen::Index r = 0; r < 7; ++r) {
      CHECK(counts.counts().row(r).sum() == shots);
      for (Eigen::Index k = 0; k < 6; ++k)
        CHECK(std::abs(double(counts.counts()(r, k)) - double(shots) * p) <
              5.0 * sigma);
    }
  }

  SUBCASE("same seed reproduces the table") {
    const auto rho = random_density(3, 3, 5);
    const auto table =
        born_probabilities(rho, build_basis_family(default_schedule(3)));
    const auto a = sample_counts(table, 5000, 123);
    const auto b = sample_counts(table, 5000, 123);
    CHECK((a.counts() - b.counts()).cwiseAbs().maxCoeff() == 0);
    const auto c = sample_counts(table, 5000, 124);
    CHECK((a.counts() - c.counts()).cwiseAbs().maxCoeff() > 0);
  }

  SUBCASE("shots must be positive") {
    const auto rho = random_density(2, 1, 5);
    const auto table =
        born_probabilities(rho, build_basis_family(default_schedule(2)));
    CHECK_THROWS_AS(sample_counts(table, 0, 1), Error);
  }
}

TEST_CASE("frequencies") {
  SUBCASE("simple division") {
    CountMatrix counts(3, 2);
    counts << 3, 1, 2, 2, 4, 0;
    const auto freq = frequencies(CountTable(4, counts));
    CHECK(freq.rows()(0, 0) == doctest::Approx(0.75));
    CHECK(freq.rows()(0, 1) == doctest::Approx(0.25));
  }

  SUBCASE("rows sum to one") {
    const auto rho = random_density(4, 2, 9);
    const auto table =
        born_probabilities(rho, build_basis_family(default_schedule(4)));
    const auto freq = frequencies(sample_counts(table, 999, 3));
    for (Eigen::Index r = 0; r <= 4; ++r)
      CHECK(std::abs(freq.rows().row(r).sum() - 1.0) < 1e-12);
  }

  SUBCASE("law of large numbers round trip at d=3") {
    const auto rho = random_density(3, 2, 13);
    const auto table =
        born_probabilities(rho, build_basis_family(default_schedule(3)));
    const auto freq = frequencies(sample_counts(table, 10000000, 19));
    CHECK((freq.rows() - table.rows()).cwiseAbs().maxCoeff() < 2e-3);
  }
}

TEST_CASE("count table invariants and JSON") {
  SUBCASE("row sums must equal shots") {
    CountMatrix counts(3, 2);
    counts << 3, 1, 2, 1, 4, 0;
    CHECK_THROWS_AS(CountTable(4, counts), Error);
  }

  SUBCASE("round trip") {
    const auto rho = random_density(3, 3, 2);
    const auto table =
        born_probabilities(rho, build_basis_family(default_schedule(3)));
    const auto counts = sample_counts(table, 1234, 8);
    nlohmann::json j = counts;
    const auto back = counts_from_json(j);
    CHECK(back.shots_per_basis() == 1234);
    CHECK((back.counts() - counts.counts()).cwiseAbs().maxCoeff() == 0);
  }

  SUBCASE("rejects inconsistent payloads") {
    nlohmann::json j{{"d", 2}, {"shots", 4}, {"counts", {{3, 1}, {2, 2}}}};
    CHECK_THROWS_AS(counts_from_json(j), SchemaError);  // needs d+1 rows
    nlohmann::json j2{
        {"d", 2}, {"shots", 5}, {"counts", {{3, 1}, {2, 2}, {4, 0}}}};
    CHECK_THROWS_AS(counts_from_json(j2), SchemaError);  // rows sum to 4
  }

  SUBCASE("probability table JSON round trip") {
    const auto rho = random_density(3, 1, 4);
    const auto table =
        born_probabilities(rho, build_basis_family(default_schedule(3)));
    nlohmann::json j = table;
    const auto back = probabilities_from_json(j);
    CHECK((back.rows() - table.rows()).cwiseAbs().maxCoeff() == 0.0);
  }
}
