#include "graphboot/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace graphboot {

std::string alternative_name(Alternative a) {
  switch (a) {
    case Alternative::less:
      return "less";
    case Alternative::greater:
      return "greater";
    case Alternative::two_sided:
      return "two-sided";
  }
  return "?";
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

namespace {

double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
}

// Regularized lower incomplete gamma P(a, x) by series expansion (x < a+1).
double gamma_p_series(double a, double x) {
  double sum = 1.0 / a, term = sum, ap = a;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma Q(a, x) by continued fraction (x >= a+1).
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::invalid_argument("bad gamma arguments");
  if (x == 0.0) return 1.0;
  return x < a + 1.0 ? 1.0 - gamma_p_series(a, x) : gamma_q_cf(a, x);
}

double tail_p(double z, Alternative alt, bool* degenerate_inf = nullptr) {
  if (std::isinf(z) && degenerate_inf) *degenerate_inf = true;
  switch (alt) {
    case Alternative::less:
      return normal_cdf(z);
    case Alternative::greater:
      return normal_cdf(-z);
    case Alternative::two_sided:
      return 2.0 * normal_cdf(-std::abs(z));
  }
  return 1.0;
}

}  // namespace

double normal_quantile(double p) {
  if (!(p > 0.0) || !(p < 1.0))
    throw std::invalid_argument("quantile needs p in (0,1)");
  // Acklam's rational approximation, then one Halley refinement.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425, phigh = 1.0 - plow;
  double x;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= phigh) {
    const double q = p - 0.5, r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
          c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = normal_cdf(x) - p;
  const double u = e / normal_pdf(x);
  x -= u / (1.0 + x * u / 2.0);
  return x;
}

double chi_square_sf(double x, int df) {
  if (df < 1) throw std::invalid_argument("df must be positive");
  if (x < 0.0) return 1.0;
  return gamma_q(df / 2.0, x / 2.0);
}

std::pair<double, double> confidence_interval(double est, double sigma2,
                                              long long n, double level) {
  if (!(level > 0.0) || !(level < 1.0))
    throw std::invalid_argument("level must lie in (0,1)");
  if (n < 1) throw std::invalid_argument("n must be positive");
  const double s2 = std::max(sigma2, 0.0);
  const double half = normal_quantile(0.5 + level / 2.0) *
                      std::sqrt(s2 / static_cast<double>(n));
  return {est - half, est + half};
}

TestResult one_sample_test(double est, double sigma2, long long n,
                           double null_value, Alternative alt) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  TestResult res;
  res.alternative = alt;
  res.estimate = est;
  res.null_value = null_value;
  res.sigma2 = sigma2;
  res.n = n;
  double s2 = sigma2;
  if (s2 < 0.0) {
    s2 = 0.0;
    res.degenerate = true;
  }
  const double diff = est - null_value;
  if (s2 == 0.0) {
    res.statistic = diff == 0.0 ? 0.0
                                : std::copysign(
                                      std::numeric_limits<double>::infinity(),
                                      diff);
    if (diff != 0.0) res.degenerate = true;
  } else {
    res.statistic =
        std::sqrt(static_cast<double>(n)) * diff / std::sqrt(s2);
  }
  res.p_value = tail_p(res.statistic, alt);
  return res;
}

TestResult two_sample_test(double est1, double sigma2_1, long long n1,
                           double est2, double sigma2_2, long long n2,
                           Alternative alt) {
  if (n1 < 1 || n2 < 1) throw std::invalid_argument("n must be positive");
  TestResult res;
  res.alternative = alt;
  res.estimate = est1;
  res.estimate2 = est2;
  res.sigma2 = sigma2_1;
  res.sigma2_2 = sigma2_2;
  res.n = n1;
  res.n2 = n2;
  double s1 = std::max(sigma2_1, 0.0), s2 = std::max(sigma2_2, 0.0);
  if (s1 != sigma2_1 || s2 != sigma2_2) res.degenerate = true;
  const double se2 =
      s1 / static_cast<double>(n1) + s2 / static_cast<double>(n2);
  const double diff = est1 - est2;
  if (se2 == 0.0) {
    res.statistic = diff == 0.0 ? 0.0
                                : std::copysign(
                                      std::numeric_limits<double>::infinity(),
                                      diff);
    if (diff != 0.0) res.degenerate = true;
  } else {
    res.statistic = diff / std::sqrt(se2);
  }
  res.p_value = tail_p(res.statistic, alt);
  return res;
}

TestResult multivariate_test(const std::vector<double>& estimates,
                             const std::vector<double>& targets,
                             CovarianceMatrix sigma, long long n) {
  const std::size_t k = sigma.sigma.size();
  if (estimates.size() != k || targets.size() != k)
    throw std::invalid_argument("multivariate test dimension mismatch");
  if (n < 1) throw std::invalid_argument("n must be positive");
  TestResult res;
  res.alternative = Alternative::greater;
  res.n = n;
  psd_repair(sigma);
  std::vector<double> w;
  std::vector<std::vector<double>> vecs;
  symmetric_eigen(sigma.sigma, w, vecs);
  double wmax = 0.0;
  for (double x : w) wmax = std::max(wmax, x);
  const double tol = wmax * 1e-12;
  std::vector<double> d(k);
  for (std::size_t i = 0; i < k; ++i) d[i] = estimates[i] - targets[i];
  double stat = 0.0;
  int rank = 0;
  for (std::size_t t = 0; t < k; ++t) {
    if (w[t] <= tol) continue;
    ++rank;
    double proj = 0.0;
    for (std::size_t i = 0; i < k; ++i) proj += vecs[t][i] * d[i];
    stat += proj * proj / w[t];
  }
  stat *= static_cast<double>(n);
  res.rank = rank;
  res.statistic = stat;
  if (rank == 0) {
    res.degenerate = true;
    bool all_zero = true;
    for (double x : d) all_zero &= x == 0.0;
    res.p_value = all_zero ? 1.0 : 0.0;
    return res;
  }
  res.p_value = chi_square_sf(stat, rank);
  return res;
}

CoverageReport coverage_experiment(
    const std::function<Graph(int, std::uint64_t)>& model,
    const std::function<double(int)>& target, const MotifPattern& motif,
    const CoverageConfig& cov) {
  if (cov.n_grid.empty()) throw std::invalid_argument("empty n grid");
  if (cov.reps < 1) throw std::invalid_argument("reps must be positive");
  CoverageReport report;
  report.motif = motif;
  report.level = cov.level;
  if (cov.reps < 50)
    report.warnings.push_back("fewer than 50 reps per cell; coverage noisy");
  for (std::size_t ni = 0; ni < cov.n_grid.size(); ++ni) {
    const int n = cov.n_grid[ni];
    CoverageCell cell;
    cell.n = n;
    cell.reps = cov.reps;
    cell.seed = cov.seed;
    cell.target = target(n);
    double covered = 0.0, width_sum = 0.0;
    for (int rep = 0; rep < cov.reps; ++rep) {
      Graph g = model(n, derive_seed(cov.seed, ni, rep, 0));
      BootstrapConfig cfg = cov.cfg;
      cfg.seed = derive_seed(cov.seed, ni, rep, 1);
      VarianceEstimate var = bootstrap_variance(g, motif, cfg);
      double s2 = var.sigma2;
      if (s2 <= 0.0) {
        s2 = 0.0;
        ++cell.degenerate;
      }
      auto [lo, hi] = confidence_interval(var.estimate, s2, n, cov.level);
      if (lo <= cell.target && cell.target <= hi) covered += 1.0;
      width_sum += hi - lo;
    }
    cell.coverage = covered / cov.reps;
    cell.mean_width = width_sum / cov.reps;
    report.cells.push_back(cell);
  }
  return report;
}

}  // namespace graphboot
