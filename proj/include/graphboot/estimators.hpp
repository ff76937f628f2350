#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graphboot/census.hpp"
#include "graphboot/graph.hpp"
#include "graphboot/motif.hpp"
#include "graphboot/rng.hpp"

namespace graphboot {

enum class Scheme { exact, uniform, subgraph };

std::string scheme_name(Scheme s);

struct BootstrapConfig {
  Scheme scheme = Scheme::uniform;
  int m = 0;               // uniform: subsample size
  std::vector<double> q;   // subgraph: retention probabilities, length r.p
  int B = 1;
  std::uint64_t seed = 0;
  int threads = 1;         // accepted for CLI symmetry; results ignore it
};

struct CountEstimate {
  MotifPattern motif;
  double value = 0.0;       // proportion-of-placements scale
  double normalized = 0.0;  // rho_hat^{-e} * value
  Scheme scheme = Scheme::exact;
  int n = 0;
  double rho_hat = 0.0;
  std::vector<double> iterates;  // per-iterate values (bootstrap schemes)
  std::vector<std::string> warnings;
};

// Mean degree over (n-1); equals 2|E|/(n(n-1)). Requires n >= 2.
double edge_density(const Graph& g);

// Placements of r in K_n: C(n,p) * p! / aut(r), as a double.
double placements_in_complete(const MotifPattern& r, int n);

// Mean that reproduces v[0] exactly when all entries are equal, so degenerate
// bootstrap runs match the exact path bit for bit.
double centered_mean(const std::vector<double>& v);

CountEstimate exact_count(const Graph& g, const MotifPattern& r);

// Uniform vertex subsampling: B iterates, each an m-subset drawn without
// replacement; per-iterate value is the proportion within the subsample
// (denominator uses m, not n).
CountEstimate uniform_bootstrap(const Graph& g, const MotifPattern& r,
                                const BootstrapConfig& cfg);

// Subgraph subsampling: B RAND-ESU passes, Horvitz-Thompson corrected by the
// leaf inclusion probability prod q_d. Flags a warning when the average
// number of sampled leaves per pass drops below 10.
CountEstimate subgraph_bootstrap(const Graph& g, const MotifPattern& r,
                                 const BootstrapConfig& cfg);

// a/(a+b) with a = rho^-3 P(triangle), b = rho^-2 P(vee).
double transitivity(const Graph& g);
double transitivity(double p_triangle, double p_vee, double rho_hat);

// Draw an m-subset of 0..n-1 uniformly without replacement, sorted.
VertexSet sample_vertex_subset(int n, int m, Rng& rng);

// Extends a length-p q-vector to `size` entries by repeating the last one
// (used for merged variance patterns larger than the motif).
SamplingPlan extend_plan(const std::vector<double>& q, int size);

}  // namespace graphboot
