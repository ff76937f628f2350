#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "graphboot/graph.hpp"
#include "graphboot/motif.hpp"
#include "graphboot/rng.hpp"

namespace graphboot {

// Stochastic block model: block labels i.i.d. from pi, edge probabilities
// F_ab = s_n * S_ab.
struct SbmSpec {
  std::vector<double> pi;               // block probabilities, sum 1
  std::vector<std::vector<double>> S;   // K x K symmetric nonnegative
  double s_n = 1.0;                     // scale factor in (0,1]

  int blocks() const { return static_cast<int>(pi.size()); }
  double f(int a, int b) const { return s_n * S[a][b]; }
  void validate() const;
  // Expected edge density rho = pi^T F pi.
  double rho() const;
};

struct SbmSample {
  Graph graph;
  std::vector<int> labels;
};

SbmSample sample_sbm(int n, const SbmSpec& spec, Rng& rng);

// Latent-variable graphon model: xi_i i.i.d. U(0,1), edge probability
// min(rho_n * w(xi_i, xi_j), 1).
struct GraphonSpec {
  std::function<double(double, double)> w;  // symmetric, nonnegative
  double rho_n = 1.0;
};

struct GraphonSample {
  Graph graph;
  std::vector<double> xi;
};

GraphonSample sample_graphon(int n, const GraphonSpec& spec, Rng& rng);

// Normalized analytic moment P~(R) = E prod F / rho^e via the exact sum over
// K^p block-label assignments. Scale-invariant in s_n.
double sbm_moment(const MotifPattern& r, const SbmSpec& spec);

// The two-block benchmark model: S = ((0.4, 0.45), (0.45, 0.7)),
// pi = (0.5, 0.5), s_n = 5 nu sqrt(n)/n.
SbmSpec benchmark_sbm(double nu, int n);

// Preferential-attachment graphon w(u,v) = (1-u)^{-1/2} (1-v)^{-1/2} / 4
// (the 1/4 makes the integral of w equal 1), with the given sparsity rho_n.
GraphonSpec pfa_graphon(double rho_n);

}  // namespace graphboot
