#include "graphboot/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace graphboot {

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::exact:
      return "exact";
    case Scheme::uniform:
      return "uniform";
    case Scheme::subgraph:
      return "subgraph";
  }
  return "?";
}

double edge_density(const Graph& g) {
  const int n = g.vertex_count();
  if (n < 2) throw std::invalid_argument("edge density needs n >= 2");
  return 2.0 * static_cast<double>(g.edge_count()) /
         (static_cast<double>(n) * (n - 1));
}

double placements_in_complete(const MotifPattern& r, int n) {
  if (r.p > n) return 0.0;
  double falling = 1.0;
  for (int i = 0; i < r.p; ++i) falling *= static_cast<double>(n - i);
  return falling / static_cast<double>(r.aut);
}

double centered_mean(const std::vector<double>& v) {
  if (v.empty()) throw std::invalid_argument("mean of empty vector");
  double acc = 0.0;
  for (double x : v) acc += x - v[0];
  return v[0] + acc / static_cast<double>(v.size());
}

namespace {

void finish_estimate(CountEstimate& est, const Graph& g) {
  est.n = g.vertex_count();
  est.rho_hat = edge_density(g);
  if (est.rho_hat == 0.0 && est.motif.e > 0)
    throw std::runtime_error("degenerate density");
  est.normalized = std::pow(est.rho_hat, -est.motif.e) * est.value;
}

}  // namespace

CountEstimate exact_count(const Graph& g, const MotifPattern& r) {
  if (r.p > g.vertex_count())
    throw std::invalid_argument("motif larger than host graph");
  CountEstimate est;
  est.motif = r;
  est.scheme = Scheme::exact;
  CensusResult census = exact_copy_census(g, r.p, {&r});
  est.value = census.totals[0] / placements_in_complete(r, g.vertex_count());
  finish_estimate(est, g);
  return est;
}

VertexSet sample_vertex_subset(int n, int m, Rng& rng) {
  if (m < 0 || m > n) throw std::invalid_argument("bad subset size");
  // Floyd's algorithm: m iterations, no O(n) scratch.
  std::vector<int> picked;
  picked.reserve(m);
  auto contains = [&](int x) {
    return std::find(picked.begin(), picked.end(), x) != picked.end();
  };
  if (static_cast<long long>(m) * m <= 4LL * n) {
    for (int j = n - m; j < n; ++j) {
      int t = static_cast<int>(rng.below(static_cast<std::uint64_t>(j) + 1));
      picked.push_back(contains(t) ? j : t);
    }
  } else {
    // Dense regime: partial Fisher-Yates over an index array.
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    for (int i = 0; i < m; ++i) {
      int j = i + static_cast<int>(
                      rng.below(static_cast<std::uint64_t>(n - i)));
      std::swap(idx[i], idx[j]);
    }
    picked.assign(idx.begin(), idx.begin() + m);
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

CountEstimate uniform_bootstrap(const Graph& g, const MotifPattern& r,
                                const BootstrapConfig& cfg) {
  const int n = g.vertex_count();
  if (cfg.scheme != Scheme::uniform)
    throw std::invalid_argument("config is not a uniform scheme");
  if (cfg.B < 1) throw std::invalid_argument("B must be positive");
  if (cfg.m < r.p || cfg.m > n)
    throw std::invalid_argument("need r.p <= m <= n");
  CountEstimate est;
  est.motif = r;
  est.scheme = Scheme::uniform;
  const double denom = placements_in_complete(r, cfg.m);
  est.iterates.resize(cfg.B);
  for (int b = 0; b < cfg.B; ++b) {
    Rng rng(derive_seed(cfg.seed, 1, static_cast<std::uint64_t>(b), 0));
    VertexSet s = sample_vertex_subset(n, cfg.m, rng);
    Graph sub = induced_subgraph(g, s);
    CensusResult census = exact_copy_census(sub, r.p, {&r});
    est.iterates[b] = census.totals[0] / denom;
  }
  est.value = centered_mean(est.iterates);
  finish_estimate(est, g);
  return est;
}

SamplingPlan extend_plan(const std::vector<double>& q, int size) {
  if (q.empty()) throw std::invalid_argument("empty q vector");
  SamplingPlan plan;
  plan.p = size;
  plan.q = q;
  plan.q.resize(size, q.back());
  plan.validate();
  return plan;
}

CountEstimate subgraph_bootstrap(const Graph& g, const MotifPattern& r,
                                 const BootstrapConfig& cfg) {
  if (cfg.scheme != Scheme::subgraph)
    throw std::invalid_argument("config is not a subgraph scheme");
  if (cfg.B < 1) throw std::invalid_argument("B must be positive");
  if (static_cast<int>(cfg.q.size()) != r.p)
    throw std::invalid_argument("length(q) must equal r.p");
  if (r.p > g.vertex_count())
    throw std::invalid_argument("motif larger than host graph");
  SamplingPlan plan{r.p, cfg.q};
  plan.validate();
  const double pi = plan.inclusion_probability();
  const double denom = pi * placements_in_complete(r, g.vertex_count());
  CountEstimate est;
  est.motif = r;
  est.scheme = Scheme::subgraph;
  est.iterates.resize(cfg.B);
  long long sampled_leaves = 0;
  for (int b = 0; b < cfg.B; ++b) {
    Rng rng(derive_seed(cfg.seed, 2, static_cast<std::uint64_t>(b), 0));
    CensusResult census = sampled_copy_census(g, plan, rng, {&r});
    sampled_leaves += census.leaves;
    est.iterates[b] = census.totals[0] / denom;
  }
  est.value = centered_mean(est.iterates);
  if (static_cast<double>(sampled_leaves) / cfg.B < 10.0)
    est.warnings.push_back(
        "fewer than 10 sampled leaves per pass on average; estimate variance "
        "may blow up");
  finish_estimate(est, g);
  return est;
}

double transitivity(double p_triangle, double p_vee, double rho_hat) {
  if (rho_hat <= 0.0) throw std::runtime_error("degenerate density");
  const double a = std::pow(rho_hat, -3) * p_triangle;
  const double b = std::pow(rho_hat, -2) * p_vee;
  if (a + b <= 0.0) throw std::runtime_error("no connected triples");
  return a / (a + b);
}

double transitivity(const Graph& g) {
  const MotifPattern tri = triangle_pattern();
  const MotifPattern vee = vee_pattern();
  CensusResult census = exact_copy_census(g, 3, {&tri, &vee});
  const int n = g.vertex_count();
  const double p_tri = census.totals[0] / placements_in_complete(tri, n);
  const double p_vee = census.totals[1] / placements_in_complete(vee, n);
  return transitivity(p_tri, p_vee, edge_density(g));
}

}  // namespace graphboot
