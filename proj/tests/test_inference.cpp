#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "graphboot/inference.hpp"
#include "graphboot/models.hpp"

using namespace graphboot;

TEST_CASE("normal cdf and quantile") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5));
  CHECK(normal_cdf(1.0) == doctest::Approx(0.8413447460685429).epsilon(1e-12));
  CHECK(normal_cdf(-1.0) + normal_cdf(1.0) == doctest::Approx(1.0));
  CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-12));

  CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(normal_quantile(0.975) ==
        doctest::Approx(1.959963984540054).epsilon(1e-9));
  CHECK(normal_quantile(0.025) ==
        doctest::Approx(-1.959963984540054).epsilon(1e-9));
  CHECK(normal_quantile(0.8413447460685429) ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(normal_quantile(0.999) == doctest::Approx(3.090232306167813).epsilon(1e-9));
  CHECK(normal_quantile(1e-6) == doctest::Approx(-4.753424308822899).epsilon(1e-8));
  // Round trips across the whole range, including the tail branches.
  for (double p : {1e-8, 0.001, 0.1, 0.3, 0.7, 0.95, 0.9999}) {
    CHECK(normal_cdf(normal_quantile(p)) == doctest::Approx(p).epsilon(1e-10));
  }
  CHECK_THROWS_AS(normal_quantile(0.0), std::invalid_argument);
  CHECK_THROWS_AS(normal_quantile(1.0), std::invalid_argument);
}

TEST_CASE("chi-square survival function") {
  // df = 1: sf(x) = 2 (1 - Phi(sqrt(x))).
  CHECK(chi_square_sf(3.841458820694124, 1) ==
        doctest::Approx(0.05).epsilon(1e-10));
  for (double x : {0.5, 1.0, 4.0, 10.0})
    CHECK(chi_square_sf(x, 1) ==
          doctest::Approx(2.0 * normal_cdf(-std::sqrt(x))).epsilon(1e-12));
  // df = 2: sf(x) = exp(-x/2).
  for (double x : {0.5, 2.0, 5.991464547107979, 20.0})
    CHECK(chi_square_sf(x, 2) == doctest::Approx(std::exp(-x / 2)).epsilon(1e-12));
  CHECK(chi_square_sf(11.070497693516351, 5) ==
        doctest::Approx(0.05).epsilon(1e-10));
  CHECK(chi_square_sf(0.0, 3) == 1.0);
  CHECK(chi_square_sf(-1.0, 3) == 1.0);
  CHECK_THROWS_AS(chi_square_sf(1.0, 0), std::invalid_argument);
}

TEST_CASE("confidence interval arithmetic") {
  auto [lo, hi] = confidence_interval(0.0, 1.0, 100, 0.95);
  CHECK(lo == doctest::Approx(-0.1959963984540054).epsilon(1e-9));
  CHECK(hi == doctest::Approx(0.1959963984540054).epsilon(1e-9));
  auto [lo2, hi2] = confidence_interval(2.0, 4.0, 400, 0.9);
  CHECK(hi2 - 2.0 == doctest::Approx(normal_quantile(0.95) * 0.1).epsilon(1e-9));
  // Negative variance clamps to a zero-width interval.
  auto [lo3, hi3] = confidence_interval(1.5, -0.1, 50, 0.95);
  CHECK(lo3 == 1.5);
  CHECK(hi3 == 1.5);
  CHECK_THROWS_AS(confidence_interval(0.0, 1.0, 0, 0.95),
                  std::invalid_argument);
  CHECK_THROWS_AS(confidence_interval(0.0, 1.0, 10, 1.0),
                  std::invalid_argument);
}

TEST_CASE("one-sample test") {
  TestResult r = one_sample_test(1.0, 4.0, 100, 0.6, Alternative::two_sided);
  CHECK(r.statistic == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.p_value == doctest::Approx(2.0 * normal_cdf(-2.0)).epsilon(1e-12));
  CHECK_FALSE(r.degenerate);

  TestResult g = one_sample_test(1.0, 4.0, 100, 0.6, Alternative::greater);
  CHECK(g.p_value == doctest::Approx(normal_cdf(-2.0)).epsilon(1e-12));
  TestResult l = one_sample_test(1.0, 4.0, 100, 0.6, Alternative::less);
  CHECK(l.p_value == doctest::Approx(normal_cdf(2.0)).epsilon(1e-12));

  // Zero variance: off-null diff explodes, on-null diff is a clean zero.
  TestResult inf = one_sample_test(1.0, 0.0, 100, 0.5, Alternative::two_sided);
  CHECK(std::isinf(inf.statistic));
  CHECK(inf.degenerate);
  CHECK(inf.p_value == doctest::Approx(0.0));
  TestResult flat = one_sample_test(0.5, 0.0, 100, 0.5, Alternative::two_sided);
  CHECK(flat.statistic == 0.0);
  CHECK(flat.p_value == doctest::Approx(1.0));
  CHECK_THROWS_AS(one_sample_test(1.0, 1.0, 0, 0.0, Alternative::two_sided),
                  std::invalid_argument);
}

TEST_CASE("two-sample test") {
  // Close estimates with moderate noise: not significant.
  TestResult ns = two_sample_test(0.13, 0.1, 1000, 0.11, 0.1, 1000,
                                  Alternative::two_sided);
  const double se = std::sqrt(0.1 / 1000 + 0.1 / 1000);
  CHECK(ns.statistic == doctest::Approx(0.02 / se).epsilon(1e-12));
  CHECK(ns.p_value > 0.05);
  // A wider gap with the same noise: clearly significant.
  TestResult sig = two_sample_test(0.10, 0.1, 1000, 0.035, 0.1, 1000,
                                   Alternative::two_sided);
  CHECK(sig.statistic == doctest::Approx(0.065 / se).epsilon(1e-12));
  CHECK(sig.p_value < 0.05);
  // Degenerate arms.
  TestResult d = two_sample_test(1.0, 0.0, 10, 2.0, 0.0, 10,
                                 Alternative::two_sided);
  CHECK(std::isinf(d.statistic));
  CHECK(d.degenerate);
  TestResult eq = two_sample_test(1.0, 0.0, 10, 1.0, 0.0, 10,
                                  Alternative::two_sided);
  CHECK(eq.p_value == doctest::Approx(1.0));
  CHECK_THROWS_AS(
      two_sample_test(0.0, 1.0, 0, 0.0, 1.0, 5, Alternative::two_sided),
      std::invalid_argument);
}

TEST_CASE("multivariate test reduces to the squared z in one dimension") {
  CovarianceMatrix sigma;
  sigma.sigma = {{4.0}};
  TestResult mv = multivariate_test({1.0}, {0.6}, sigma, 100);
  TestResult z = one_sample_test(1.0, 4.0, 100, 0.6, Alternative::two_sided);
  CHECK(mv.rank == 1);
  CHECK(mv.statistic == doctest::Approx(z.statistic * z.statistic).epsilon(1e-12));
  CHECK(mv.p_value == doctest::Approx(z.p_value).epsilon(1e-9));
}

TEST_CASE("multivariate test with a diagonal covariance") {
  CovarianceMatrix sigma;
  sigma.sigma = {{2.0, 0.0}, {0.0, 8.0}};
  TestResult mv = multivariate_test({1.0, 3.0}, {0.5, 2.0}, sigma, 50);
  CHECK(mv.rank == 2);
  CHECK(mv.statistic ==
        doctest::Approx(50.0 * (0.25 / 2.0 + 1.0 / 8.0)).epsilon(1e-12));
  CHECK(mv.p_value ==
        doctest::Approx(chi_square_sf(mv.statistic, 2)).epsilon(1e-12));
}

TEST_CASE("multivariate test handles rank deficiency and repair") {
  // Rank-1 covariance: the orthogonal component of the difference is ignored.
  CovarianceMatrix sigma;
  sigma.sigma = {{1.0, 1.0}, {1.0, 1.0}};
  TestResult mv = multivariate_test({1.0, 1.0}, {0.0, 0.0}, sigma, 10);
  CHECK(mv.rank == 1);
  CHECK(mv.statistic == doctest::Approx(10.0 * 2.0 / 2.0).epsilon(1e-9));

  // Zero covariance: degenerate verdicts.
  CovarianceMatrix zero;
  zero.sigma = {{0.0, 0.0}, {0.0, 0.0}};
  TestResult off = multivariate_test({1.0, 0.0}, {0.0, 0.0}, zero, 10);
  CHECK(off.degenerate);
  CHECK(off.p_value == 0.0);
  TestResult on = multivariate_test({0.0, 0.0}, {0.0, 0.0}, zero, 10);
  CHECK(on.degenerate);
  CHECK(on.p_value == 1.0);

  CHECK_THROWS_AS(multivariate_test({1.0}, {0.0, 0.0}, zero, 10),
                  std::invalid_argument);
}

TEST_CASE("coverage experiment smoke and determinism") {
  // A two-block model with strong heterogeneity, so the variance estimator
  // has a real overlap-1 signal and produces positive widths at desk scale.
  SbmSpec het;
  het.pi = {0.5, 0.5};
  het.S = {{0.1, 0.25}, {0.25, 1.0}};
  het.s_n = 0.3;
  het.validate();
  auto model = [&](int n, std::uint64_t seed) {
    Rng rng(seed);
    return sample_sbm(n, het, rng).graph;
  };
  auto target = [&](int) { return sbm_moment(vee_pattern(), het); };
  CoverageConfig cov;
  cov.n_grid = {50, 70};
  cov.reps = 20;
  cov.level = 0.95;
  cov.seed = 123;
  cov.cfg.scheme = Scheme::uniform;
  cov.cfg.m = 40;
  cov.cfg.B = 8;
  CoverageReport rep = coverage_experiment(model, target, vee_pattern(), cov);
  REQUIRE(rep.cells.size() == 2);
  REQUIRE_FALSE(rep.warnings.empty());  // reps < 50
  for (const auto& cell : rep.cells) {
    CHECK(cell.reps == 20);
    CHECK(cell.coverage >= 0.0);
    CHECK(cell.coverage <= 1.0);
    CHECK(cell.mean_width > 0.0);
    CHECK(cell.target == doctest::Approx(sbm_moment(vee_pattern(), het)));
  }
  CoverageReport rep2 = coverage_experiment(model, target, vee_pattern(), cov);
  CHECK(rep.cells[0].coverage == rep2.cells[0].coverage);
  CHECK(rep.cells[0].mean_width == rep2.cells[0].mean_width);

  CoverageConfig bad = cov;
  bad.n_grid.clear();
  CHECK_THROWS_AS(coverage_experiment(model, target, vee_pattern(), bad),
                  std::invalid_argument);
  bad = cov;
  bad.reps = 0;
  CHECK_THROWS_AS(coverage_experiment(model, target, vee_pattern(), bad),
                  std::invalid_argument);
}
