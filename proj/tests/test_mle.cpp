#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "qst/bootstrap.hpp"
#include "qst/born.hpp"
#include "qst/density_matrix.hpp"
#include "qst/metrics.hpp"
#include "qst/mle.hpp"
#include "qst/scenario.hpp"

using namespace qst;

namespace {

DensityMatrix mixed_state(Eigen::Index d) {
  return validate_density(Eigen::MatrixXcd::Identity(d, d) / double(d));
}

CountTable exact_counts(const DensityMatrix& rho, const BasisFamily& family,
                        std::int64_t shots) {
  const auto table = born_probabilities(rho, family);
  CountMatrix counts(family.dim + 1, family.dim);
  for (Eigen::Index r = 0; r <= family.dim; ++r) {
    std::int64_t used = 0;
    for (Eigen::Index k = 0; k < family.dim; ++k) {
      counts(r, k) = std::llround(table.rows()(r, k) * double(shots));
      used += counts(r, k);
    }
    counts(r, family.dim - 1) += shots - used;  // absorb rounding
  }
  return CountTable(shots, counts);
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v.size() % 2 ? v[v.size() / 2]
                      : 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
}

}  // namespace

TEST_CASE("log_likelihood") {
  SUBCASE("plug-in identity for counts proportional to the truth") {
    const auto family = build_basis_family(default_schedule(2));
    const auto rho = mixed_state(2);
    const std::int64_t shots = 1000;
    const auto counts = exact_counts(rho, family, shots);

    const auto table = born_probabilities(rho, family);
    double expect = 0.0;
    for (Eigen::Index r = 0; r < 3; ++r)
      for (Eigen::Index k = 0; k < 2; ++k)
        expect += double(shots) * table.rows()(r, k) *
                  std::log(table.rows()(r, k));
    CHECK(log_likelihood(rho, counts, family) ==
          doctest::Approx(expect).epsilon(1e-12));
  }

  SUBCASE("observed outcomes with zero predicted probability stay finite") {
    const auto family = build_basis_family(default_schedule(2));
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    m(0, 0) = 1.0;
    const auto rho = validate_density(m);

    CountMatrix counts(3, 2);
    counts << 999, 1, 500, 500, 500, 500;
    const double ll = log_likelihood(rho, CountTable(1000, counts), family);
    CHECK(std::isfinite(ll));
    CHECK(ll < -30.0);  // the clamped cell alone contributes ln(1e-15)
  }

  SUBCASE("the true diagonal beats the flat one on skewed counts") {
    const auto family = build_basis_family(default_schedule(2));
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    m(0, 0) = 0.7;
    m(1, 1) = 0.3;
    const auto skewed = validate_density(m);

    CountMatrix counts(3, 2);
    counts << 7, 3, 5, 5, 5, 5;
    const CountTable table(10, counts);
    CHECK(log_likelihood(skewed, table, family) >=
          log_likelihood(mixed_state(2), table, family));
  }

  SUBCASE("dimension mismatch") {
    const auto family = build_basis_family(default_schedule(3));
    CountMatrix counts(3, 2);
    counts << 5, 5, 5, 5, 5, 5;
    CHECK_THROWS_AS(log_likelihood(mixed_state(2), CountTable(10, counts),
                                   family),
                    DimensionMismatch);
  }
}

TEST_CASE("mle_reconstruct fixed point and options") {
  SUBCASE("exact counts with the truth as init converge immediately") {
    const auto family = build_basis_family(default_schedule(3));
    const auto rho = mixed_state(3);
    const auto counts = exact_counts(rho, family, 600);

    MleOptions options;
    options.init = rho;
    const auto result = mle_reconstruct(counts, family, options);
    CHECK(result.converged);
    CHECK(result.iterations == 1);
    CHECK((result.estimate.matrix() - rho.matrix()).cwiseAbs().maxCoeff() <
          1e-10);
    CHECK(result.final_step_norm < 1e-10);
  }

  SUBCASE("option validation") {
    const auto family = build_basis_family(default_schedule(2));
    const auto counts = exact_counts(mixed_state(2), family, 100);
    MleOptions bad;
    bad.max_iter = 0;
    CHECK_THROWS_AS(mle_reconstruct(counts, family, bad), Error);
    bad.max_iter = 10;
    bad.tol = 0.0;
    CHECK_THROWS_AS(mle_reconstruct(counts, family, bad), Error);
  }

  SUBCASE("dimension mismatch") {
    const auto family = build_basis_family(default_schedule(3));
    const auto counts =
        exact_counts(mixed_state(2), build_basis_family(default_schedule(2)),
                     100);
    CHECK_THROWS_AS(mle_reconstruct(counts, family), DimensionMismatch);
  }
}

TEST_CASE("mle_reconstruct on the edge state at 1e5 shots") {
  const auto family = build_basis_family(default_schedule(6));
  const auto truth = preset_state("edge6");
  const auto table = born_probabilities(truth, family);
  const auto counts = sample_counts(table, 100000, 2024);

  const auto result = mle_reconstruct(counts, family);
  CHECK(fidelity(result.estimate, truth) >= 0.995);
  CHECK(result.max_physicality_defect < 1e-10);

  // log-likelihood never decreased along the way
  for (std::size_t i = 1; i < result.ll_history.size(); ++i)
    CHECK(result.ll_history[i] >= result.ll_history[i - 1] - 1e-9);
}

TEST_CASE("mle off-diagonals of the mixed state shrink with shots") {
  const auto family = build_basis_family(default_schedule(6));
  const auto truth = mixed_state(6);
  const auto table = born_probabilities(truth, family);
  const auto counts = sample_counts(table, 1000000, 5);

  const auto result = mle_reconstruct(counts, family);
  double max_offdiag = 0.0;
  for (Eigen::Index a = 0; a < 6; ++a)
    for (Eigen::Index b = 0; b < 6; ++b)
      if (a != b)
        max_offdiag =
            std::max(max_offdiag, std::abs(result.estimate.matrix()(a, b)));
  CHECK(max_offdiag < 0.01);
}

TEST_CASE("mle monotonicity and physicality on noisy random states") {
  const auto family = build_basis_family(default_schedule(4));
  for (int trial = 0; trial < 5; ++trial) {
    const auto truth = random_density(4, 1 + trial % 4, 7000 + trial);
    const auto counts = sample_counts(born_probabilities(truth, family),
                                      10000, 8000 + trial);
    const auto result = mle_reconstruct(counts, family);
    for (std::size_t i = 1; i < result.ll_history.size(); ++i)
      CHECK(result.ll_history[i] >= result.ll_history[i - 1] - 1e-9);
    CHECK(result.max_physicality_defect < 1e-10);
    CHECK(std::isfinite(result.log_likelihood));
  }
}

TEST_CASE("mle fidelity improves with the shot budget") {
  const auto family = build_basis_family(default_schedule(6));
  const auto truth = random_density(6, 2, 424242);
  const auto table = born_probabilities(truth, family);

  std::vector<double> medians;
  for (std::int64_t shots : {10000, 100000, 1000000}) {
    std::vector<double> fids;
    for (int trial = 0; trial < 20; ++trial) {
      const auto counts =
          sample_counts(table, shots, 90000 + 100 * trial + shots % 97);
      fids.push_back(fidelity(mle_reconstruct(counts, family).estimate,
                              truth));
    }
    medians.push_back(median_of(std::move(fids)));
  }
  CHECK(medians[1] >= medians[0]);
  CHECK(medians[2] >= medians[1]);
}

TEST_CASE("bootstrap_fidelity") {
  SUBCASE("determinism") {
    const auto family = build_basis_family(default_schedule(2));
    const auto truth = mixed_state(2);
    const auto counts = exact_counts(truth, family, 1000);
    const auto a = bootstrap_fidelity(counts, family, truth, 2, 11);
    const auto b = bootstrap_fidelity(counts, family, truth, 2, 11);
    CHECK(a.point_estimate == b.point_estimate);
    CHECK(a.std_dev == b.std_dev);
    CHECK(a.failed_resamples == 0);
  }

  SUBCASE("needs at least two resamples") {
    const auto family = build_basis_family(default_schedule(2));
    const auto truth = mixed_state(2);
    const auto counts = exact_counts(truth, family, 100);
    CHECK_THROWS_AS(bootstrap_fidelity(counts, family, truth, 1, 0), Error);
  }

  SUBCASE("huge-count surrogate has tiny spread") {
    const auto family = build_basis_family(default_schedule(2));
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    m(0, 0) = 1.0;
    const auto truth = validate_density(m);
    const auto counts = exact_counts(truth, family, 10000000);
    const auto report = bootstrap_fidelity(counts, family, truth, 20, 3);
    CHECK(report.std_dev < 0.001);
    CHECK(report.point_estimate > 0.999);
  }

  SUBCASE("uniform superposition at 1e5 shots") {
    const auto family = build_basis_family(default_schedule(6));
    const auto truth = preset_state("uniform6");
    const auto counts =
        sample_counts(born_probabilities(truth, family), 100000, 77);
    const auto report = bootstrap_fidelity(counts, family, truth, 50, 13);
    CHECK(report.std_dev > 0.0);
    CHECK(report.std_dev < 0.02);
    CHECK(report.resamples == 50);
  }
}
