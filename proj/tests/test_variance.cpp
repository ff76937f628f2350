#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "graphboot/estimators.hpp"
#include "graphboot/models.hpp"
#include "graphboot/variance.hpp"
#include "oracles.hpp"

using namespace graphboot;

namespace {

long long binom(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return Graph(n, std::move(edges));
}

// A copy of r in g: its vertex set (as a bitmask) and its edge set (as a set
// of global vertex pairs). Enumerated by brute force over injective maps.
struct Copy {
  std::uint64_t vmask = 0;
  std::set<std::pair<int, int>> edges;
};

std::vector<Copy> all_copies(const Graph& g, const MotifPattern& r) {
  std::vector<Copy> out;
  std::set<std::set<std::pair<int, int>>> seen;
  oracles::for_each_subset(g.vertex_count(), r.p, [&](const VertexSet& s) {
    VertexSet perm = s;
    std::sort(perm.begin(), perm.end());
    do {
      std::set<std::pair<int, int>> mapped;
      bool ok = true;
      for (const auto& [a, b] : r.edges) {
        int u = perm[a], v = perm[b];
        if (u > v) std::swap(u, v);
        if (!g.has_edge(u, v)) {
          ok = false;
          break;
        }
        mapped.insert({u, v});
      }
      if (ok && seen.insert(mapped).second) {
        Copy c;
        c.edges = mapped;
        for (int v : s) c.vmask |= std::uint64_t{1} << v;
        out.push_back(std::move(c));
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  });
  return out;
}

// First-principles evaluation of the variance estimator: count ordered pairs
// of copies whose vertex overlap is 1 or p directly, bypassing the merged
// pattern machinery entirely.
double oracle_sigma2(const Graph& g, const MotifPattern& r) {
  const int n = g.vertex_count();
  auto copies = all_copies(g, r);
  long long pairs = 0;
  for (const auto& s : copies)
    for (const auto& t : copies) {
      int overlap = std::popcount(s.vmask & t.vmask);
      if (overlap == 1 || overlap == r.p) ++pairs;
    }
  const double rho = 2.0 * static_cast<double>(g.edge_count()) /
                     (static_cast<double>(n) * (n - 1));
  const double m = static_cast<double>(binom(n, r.p)) *
                   std::tgamma(r.p + 1.0) / static_cast<double>(r.aut);
  const double that =
      std::pow(rho, -r.e) * static_cast<double>(copies.size()) / m;
  const double x = correction_x(n, r.p);
  const double d = std::pow(rho, r.e) * m;
  return n * (static_cast<double>(pairs) / ((1.0 - x) * d * d) -
              x * that * that / (1.0 - x));
}

}  // namespace

TEST_CASE("overlap corrections against integer binomials") {
  // x(n,p) = 1 - C(n-p,p)/C(n,p); y(n,p1,p2) = 1 - C(n-p1,p2)/C(n,p2).
  CHECK(correction_x(10, 1) == doctest::Approx(0.1).epsilon(1e-14));
  for (long long n : {6, 10, 20})
    for (int p : {1, 2, 3}) {
      if (n < 2 * p) continue;
      double expected =
          1.0 - static_cast<double>(binom(n - p, p)) / binom(n, p);
      CHECK(correction_x(n, p) == doctest::Approx(expected).epsilon(1e-13));
    }
  for (long long n : {7, 12})
    for (int p1 : {2, 3})
      for (int p2 : {2, 4}) {
        if (n < p1 + p2) continue;
        double expected =
            1.0 - static_cast<double>(binom(n - p1, p2)) / binom(n, p2);
        CHECK(correction_y(n, p1, p2) ==
              doctest::Approx(expected).epsilon(1e-13));
      }
  CHECK(correction_y(15, 3, 3) == correction_x(15, 3));
  // Large n: x ~ p^2/n, still accurate in the tail.
  CHECK(correction_x(1000000, 3) == doctest::Approx(9e-6).epsilon(1e-3));
  CHECK_THROWS_AS(correction_x(5, 3), std::invalid_argument);
  CHECK_THROWS_AS(correction_y(4, 2, 3), std::invalid_argument);
}

TEST_CASE("empirical variance equals the ordered-pair oracle") {
  Graph k6 = complete_graph(6);
  Graph star(7, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {0, 6}});
  CHECK(empirical_variance(k6, triangle_pattern()).sigma2 ==
        doctest::Approx(oracle_sigma2(k6, triangle_pattern())).epsilon(1e-10));
  CHECK(empirical_variance(star, wheel(1, 2)).sigma2 ==
        doctest::Approx(oracle_sigma2(star, wheel(1, 2))).epsilon(1e-10));
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    Graph g = oracles::lcg_er_graph(9, 0.5, seed);
    for (const auto& r : {edge_pattern(), vee_pattern(), triangle_pattern()}) {
      CAPTURE(seed);
      CAPTURE(r.name);
      CHECK(empirical_variance(g, r).sigma2 ==
            doctest::Approx(oracle_sigma2(g, r)).epsilon(1e-10));
    }
  }
}

TEST_CASE("cyclic non-p-cycle motifs are out of scope") {
  Graph k5 = complete_graph(5);
  MotifPattern k4 = make_pattern(
      4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  CHECK_THROWS_AS(empirical_variance(k5, k4), std::invalid_argument);
}

TEST_CASE("batched variances equal the one-at-a-time results") {
  Graph g = oracles::lcg_er_graph(10, 0.45, 11);
  std::vector<MotifPattern> motifs{edge_pattern(), vee_pattern(),
                                   triangle_pattern()};
  auto batched = empirical_variances(g, motifs);
  REQUIRE(batched.size() == 3);
  for (std::size_t i = 0; i < motifs.size(); ++i) {
    VarianceEstimate single = empirical_variance(g, motifs[i]);
    CHECK(batched[i].sigma2 == single.sigma2);  // bit for bit
    CHECK(batched[i].estimate == single.estimate);
  }
}

TEST_CASE("degenerate bootstrap variance matches empirical bit for bit") {
  std::vector<MotifPattern> motifs{edge_pattern(), vee_pattern(),
                                   triangle_pattern(), wheel(1, 3)};
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    Graph g = oracles::lcg_er_graph(10, 0.5, seed);
    for (const auto& r : motifs) {
      VarianceEstimate emp = empirical_variance(g, r);

      BootstrapConfig uni;
      uni.scheme = Scheme::uniform;
      uni.m = g.vertex_count();
      uni.B = 3;
      uni.seed = seed;
      VarianceEstimate vu = bootstrap_variance(g, r, uni);
      CHECK(vu.sigma2 == emp.sigma2);
      CHECK(vu.estimate == emp.estimate);

      BootstrapConfig sg;
      sg.scheme = Scheme::subgraph;
      sg.q = std::vector<double>(r.p, 1.0);
      sg.B = 2;
      sg.seed = seed;
      VarianceEstimate vs = bootstrap_variance(g, r, sg);
      CHECK(vs.sigma2 == emp.sigma2);
      CHECK(vs.estimate == emp.estimate);
      REQUIRE(vs.terms.size() == emp.terms.size());
      for (std::size_t t = 0; t < vs.terms.size(); ++t)
        CHECK(vs.terms[t].pbar == emp.terms[t].pbar);
    }
  }
}

TEST_CASE("degenerate bootstrap covariance matches empirical bit for bit") {
  Graph g = oracles::lcg_er_graph(10, 0.5, 21);
  VarianceEstimate emp =
      empirical_covariance(g, vee_pattern(), triangle_pattern());
  BootstrapConfig sg;
  sg.scheme = Scheme::subgraph;
  sg.q = {1.0, 1.0, 1.0};
  sg.B = 2;
  sg.seed = 4;
  VarianceEstimate boot =
      bootstrap_covariance(g, vee_pattern(), triangle_pattern(), sg);
  CHECK(boot.sigma2 == emp.sigma2);
  CHECK(boot.estimate == emp.estimate);
  CHECK(boot.estimate2 == emp.estimate2);
}

TEST_CASE("bootstrap variance reuses the point-estimate substream") {
  Graph g = oracles::lcg_er_graph(16, 0.35, 8);
  BootstrapConfig cfg;
  cfg.scheme = Scheme::subgraph;
  cfg.q = {1.0, 0.8, 0.6};
  cfg.B = 4;
  cfg.seed = 99;
  CountEstimate point = subgraph_bootstrap(g, vee_pattern(), cfg);
  VarianceEstimate var = bootstrap_variance(g, vee_pattern(), cfg);
  CHECK(var.estimate == point.normalized);  // same seeds, same draws
}

TEST_CASE("self covariance differs from variance by the overlap-p terms") {
  Graph g = oracles::lcg_er_graph(11, 0.45, 5);
  for (const auto& r : {vee_pattern(), triangle_pattern()}) {
    VarianceEstimate var = empirical_variance(g, r);
    VarianceEstimate cov = empirical_covariance(g, r, r);
    double overlap_p_sum = 0.0;
    for (const auto& t : var.terms)
      if (t.pattern.overlap == r.p) overlap_p_sum += t.contribution;
    CHECK(var.sigma2 - cov.sigma2 ==
          doctest::Approx(overlap_p_sum).epsilon(1e-10));
  }
}

namespace {

// Monte-Carlo oracle for sigma2: n times the sample variance over model draws
// of the count statistic normalized by the model's true density, i.e. the
// deterministic-rho functional that sigma2 estimates.  The plug-in statistic
// normalized by rho-hat self-cancels its leading fluctuation for acyclic
// motifs, so it is the wrong yardstick here.
double mc_fixed_rho_variance(const SbmSpec& spec, int n,
                             const MotifPattern& r, int draws,
                             std::uint64_t salt) {
  const double rho = spec.rho();
  std::vector<double> tfix(draws);
  for (int t = 0; t < draws; ++t) {
    Rng rng(derive_seed(salt, 3, t, 0));
    Graph g = sample_sbm(n, spec, rng).graph;
    CountEstimate est = exact_count(g, r);
    tfix[t] = est.normalized * std::pow(edge_density(g) / rho, r.e);
  }
  double mean = centered_mean(tfix);
  double v = 0.0;
  for (double x : tfix) v += (x - mean) * (x - mean);
  return n * v / (draws - 1);
}

double median_sigma2(const SbmSpec& spec, int n, const MotifPattern& r,
                     int evals, std::uint64_t salt) {
  std::vector<double> sg(evals);
  for (int t = 0; t < evals; ++t) {
    Rng rng(derive_seed(salt, 3, t, 0));
    Graph g = sample_sbm(n, spec, rng).graph;
    sg[t] = empirical_variance(g, r).sigma2;
  }
  std::sort(sg.begin(), sg.end());
  return sg[evals / 2];
}

}  // namespace

TEST_CASE("variance estimator tracks Monte-Carlo truth at desk scale") {
  // For the edge motif the overlap truncation drops nothing, so the estimator
  // matches the Monte-Carlo oracle tightly even on a homogeneous graph.
  SbmSpec er;
  er.pi = {1.0};
  er.S = {{1.0}};
  er.s_n = 0.06;  // mean degree ~ 7 at n = 120
  double mc_edge = mc_fixed_rho_variance(er, 120, edge_pattern(), 200, 555);
  double sg_edge = median_sigma2(er, 120, edge_pattern(), 41, 555);
  CHECK(sg_edge / mc_edge > 0.7);
  CHECK(sg_edge / mc_edge < 1.3);

  // For p = 3 motifs the estimator keeps only the overlap-1 and overlap-p
  // pair terms, which carry the variance when the model has real block
  // heterogeneity; a homogeneous host would put everything in the dropped
  // middle overlaps.  Wide band: n = 150 is small.
  SbmSpec het;
  het.pi = {0.5, 0.5};
  het.S = {{0.1, 0.25}, {0.25, 1.0}};
  het.s_n = 9.0 / (0.4 * 149.0);  // mean degree ~ 9
  het.validate();
  for (const auto& r : {vee_pattern(), triangle_pattern()}) {
    double mc = mc_fixed_rho_variance(het, 150, r, 200, 555);
    double sg = median_sigma2(het, 150, r, 41, 555);
    CAPTURE(r.name);
    CHECK(sg / mc > 0.4);
    CHECK(sg / mc < 2.5);
  }
}

TEST_CASE("covariance matrix assembly and symmetry") {
  Graph g = oracles::lcg_er_graph(10, 0.5, 17);
  std::vector<MotifPattern> motifs{vee_pattern(), triangle_pattern()};
  CovarianceMatrix m = covariance_matrix(g, motifs);
  REQUIRE(m.sigma.size() == 2);
  CHECK(m.sigma[0][1] == m.sigma[1][0]);
  CHECK(m.sigma[0][0] == empirical_variance(g, vee_pattern()).sigma2);
  CHECK(m.sigma[0][1] ==
        empirical_covariance(g, vee_pattern(), triangle_pattern()).sigma2);
}

TEST_CASE("symmetric eigendecomposition") {
  std::vector<std::vector<double>> a{{2.0, 1.0}, {1.0, 2.0}};
  std::vector<double> w;
  std::vector<std::vector<double>> v;
  symmetric_eigen(a, w, v);
  REQUIRE(w.size() == 2);
  CHECK(w[0] == doctest::Approx(1.0));
  CHECK(w[1] == doctest::Approx(3.0));
  // Reconstruct A = sum_i w_i v_i v_i^T.
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      double s = 0.0;
      for (int t = 0; t < 2; ++t) s += w[t] * v[t][i] * v[t][j];
      CHECK(s == doctest::Approx(a[i][j]).epsilon(1e-12));
    }
  // Eigenvector equation A v = w v.
  for (int t = 0; t < 2; ++t)
    for (int i = 0; i < 2; ++i) {
      double av = 0.0;
      for (int j = 0; j < 2; ++j) av += a[i][j] * v[t][j];
      CHECK(av == doctest::Approx(w[t] * v[t][i]).epsilon(1e-12));
    }
}

TEST_CASE("psd repair clamps negative eigenvalues") {
  CovarianceMatrix m;
  m.sigma = {{1.0, 2.0}, {2.0, 1.0}};  // eigenvalues -1 and 3
  psd_repair(m);
  CHECK(m.psd_repaired);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(m.sigma[i][j] == doctest::Approx(1.5).epsilon(1e-12));

  CovarianceMatrix ok;
  ok.sigma = {{2.0, 0.5}, {0.5, 1.0}};
  psd_repair(ok);
  CHECK_FALSE(ok.psd_repaired);
  CHECK(ok.sigma[0][1] == 0.5);
}

TEST_CASE("delta method plumbing") {
  CovarianceMatrix m;
  m.sigma = {{4.0, 1.0}, {1.0, 9.0}};
  CHECK(delta_variance({0.0, 0.0}, m, {1.0, 0.0}) == doctest::Approx(4.0));
  CHECK(delta_variance({0.0, 0.0}, m, {1.0, 1.0}) == doctest::Approx(15.0));
  CHECK_THROWS_AS(delta_variance({0.0}, m, {1.0, 0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(delta_variance({0.0, 0.0}, m,
                                 {std::nan(""), 0.0}),
                  std::invalid_argument);
}

TEST_CASE("transitivity gradient matches finite differences") {
  auto f = [](double a, double b) { return a / (a + b); };
  const double h = 1e-6;
  for (auto [a, b] : std::vector<std::pair<double, double>>{
           {0.3, 0.7}, {1.5, 0.2}, {0.05, 0.9}, {2.0, 2.0}}) {
    auto [ga, gb] = transitivity_gradient(a, b);
    double fa = (f(a + h, b) - f(a - h, b)) / (2 * h);
    double fb = (f(a, b + h) - f(a, b - h)) / (2 * h);
    CHECK(ga == doctest::Approx(fa).epsilon(1e-6));
    CHECK(gb == doctest::Approx(fb).epsilon(1e-6));
  }
  CHECK_THROWS_AS(transitivity_gradient(0.0, 0.0), std::invalid_argument);
}
