#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "graphboot/estimators.hpp"
#include "graphboot/motif.hpp"
#include "graphboot/variance.hpp"

namespace graphboot {

enum class Alternative { less, greater, two_sided };

std::string alternative_name(Alternative a);

struct TestResult {
  double statistic = 0.0;  // z value (chi-square value for multivariate)
  double p_value = 1.0;
  Alternative alternative = Alternative::two_sided;
  double estimate = 0.0;
  double null_value = 0.0;
  double sigma2 = 0.0;
  long long n = 0;
  double estimate2 = 0.0;  // two-sample second arm
  double sigma2_2 = 0.0;
  long long n2 = 0;
  int rank = 0;            // multivariate: support dimension used
  bool degenerate = false;
};

double normal_cdf(double z);
double normal_quantile(double p);
// Upper tail of the chi-square distribution with df degrees of freedom.
double chi_square_sf(double x, int df);

// est +/- z_{(1+level)/2} * sqrt(sigma2 / n); sigma2 at the sqrt(n)-CLT scale
// produced by the variance estimators.
std::pair<double, double> confidence_interval(double est, double sigma2,
                                              long long n, double level);

TestResult one_sample_test(double est, double sigma2, long long n,
                           double null_value, Alternative alt);

TestResult two_sample_test(double est1, double sigma2_1, long long n1,
                           double est2, double sigma2_2, long long n2,
                           Alternative alt);

// Quadratic form n (T - P)^T Sigma^+ (T - P) against chi-square on the
// support rank; Sigma is PSD-repaired first.
TestResult multivariate_test(const std::vector<double>& estimates,
                             const std::vector<double>& targets,
                             CovarianceMatrix sigma, long long n);

struct CoverageCell {
  int n = 0;
  int reps = 0;
  double coverage = 0.0;
  double mean_width = 0.0;
  std::uint64_t seed = 0;      // master seed the cell's substreams derive from
  int degenerate = 0;          // reps with clamped / zero variance
  double target = 0.0;
};

struct CoverageReport {
  MotifPattern motif;
  double level = 0.95;
  std::vector<CoverageCell> cells;
  std::vector<std::string> warnings;
};

struct CoverageConfig {
  std::vector<int> n_grid;
  int reps = 50;
  BootstrapConfig cfg;       // per-rep seed is derived, cfg.seed is ignored
  double level = 0.95;
  std::uint64_t seed = 0;
};

// For each n in the grid: simulate `reps` graphs from `model`, form the
// bootstrap estimate, variance and CI, and score coverage of `target(n)`.
CoverageReport coverage_experiment(
    const std::function<Graph(int, std::uint64_t)>& model,
    const std::function<double(int)>& target, const MotifPattern& motif,
    const CoverageConfig& cov);

}  // namespace graphboot
