#pragma once

#include <utility>
#include <vector>

#include "graphboot/estimators.hpp"
#include "graphboot/graph.hpp"
#include "graphboot/motif.hpp"

namespace graphboot {

// Overlap fractions used by the variance/covariance estimators, computed via
// log-gamma so they stay finite for very large n.
// correction_x(n,p): share of ordered pairs of p-subsets of [n] that overlap.
double correction_x(long long n, int p);
// correction_y(n,p1,p2): same for a p1-subset vs a p2-subset.
double correction_y(long long n, int p1, int p2);

struct MergedTerm {
  MergedPattern pattern;
  double pbar = 0.0;          // proportion-scale estimate for the union type
  double count = 0.0;         // implied copy count: pbar * placements
  double contribution = 0.0;  // weighted share of sigma2
};

// Variance (one motif) or covariance (two motifs) of the normalized count at
// the sqrt(n)-CLT scale: sigma2 estimates n * Var(rho^-e P-hat). Confidence
// intervals therefore use width z * sqrt(sigma2 / n).
struct VarianceEstimate {
  std::vector<MotifPattern> motifs;  // one or two entries
  double sigma2 = 0.0;
  double estimate = 0.0;    // normalized estimate of motif 1 (T-hat scale)
  double estimate2 = 0.0;   // motif 2, covariance case
  double rho_hat = 0.0;
  double correction = 0.0;  // the x or y used
  Scheme scheme = Scheme::exact;
  int n = 0;
  std::vector<MergedTerm> terms;
  std::vector<std::string> warnings;
};

VarianceEstimate empirical_variance(const Graph& g, const MotifPattern& r);

// Batched version sharing one exact enumeration pass per distinct subgraph
// size across all motifs; the per-motif results equal empirical_variance.
std::vector<VarianceEstimate> empirical_variances(
    const Graph& g, const std::vector<MotifPattern>& motifs);

VarianceEstimate empirical_covariance(const Graph& g, const MotifPattern& r1,
                                      const MotifPattern& r2);

// Same formulas with every count replaced by its bootstrap estimate under
// cfg. With q identically 1 (or m = n) the result equals the empirical
// estimator bit for bit. For union patterns larger than the motif, the
// q-vector is extended by repeating its last entry.
VarianceEstimate bootstrap_variance(const Graph& g, const MotifPattern& r,
                                    const BootstrapConfig& cfg);
VarianceEstimate bootstrap_covariance(const Graph& g, const MotifPattern& r1,
                                      const MotifPattern& r2,
                                      const BootstrapConfig& cfg);

struct CovarianceMatrix {
  std::vector<MotifPattern> motifs;
  std::vector<std::vector<double>> sigma;  // k x k, symmetric
  bool psd_repaired = false;
};

// Pairwise assembly from the estimators above; cfg == nullptr -> empirical.
CovarianceMatrix covariance_matrix(const Graph& g,
                                   const std::vector<MotifPattern>& motifs,
                                   const BootstrapConfig* cfg = nullptr);

// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
// Returns eigenvalues ascending; vectors[i] is the eigenvector for w[i].
void symmetric_eigen(std::vector<std::vector<double>> a,
                     std::vector<double>& w,
                     std::vector<std::vector<double>>& v);

// Clamps negative eigenvalues to zero; sets psd_repaired when it changed
// anything material.
void psd_repair(CovarianceMatrix& m);

// g^T Sigma g; `values` is checked for dimension only (the gradient is
// already evaluated at it).
double delta_variance(const std::vector<double>& values,
                      const CovarianceMatrix& sigma,
                      const std::vector<double>& gradient);

// Gradient of f(a,b) = a/(a+b) at (a,b).
std::pair<double, double> transitivity_gradient(double a, double b);

}  // namespace graphboot
