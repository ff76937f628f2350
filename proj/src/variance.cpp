#include "graphboot/variance.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace graphboot {

double correction_x(long long n, int p) {
  if (p < 1) throw std::invalid_argument("p must be positive");
  if (n < 2LL * p)
    throw std::invalid_argument("host too small for overlap-0 term");
  // 1 - x = prod_{i<p} (n-p-i)/(n-i); accumulate in log space so the result
  // stays accurate when x is tiny.
  double log1mx = 0.0;
  for (int i = 0; i < p; ++i)
    log1mx += std::log1p(-static_cast<double>(p) /
                         static_cast<double>(n - i));
  return -std::expm1(log1mx);
}

double correction_y(long long n, int p1, int p2) {
  if (p1 < 1 || p2 < 1) throw std::invalid_argument("sizes must be positive");
  if (n < static_cast<long long>(p1) + p2)
    throw std::invalid_argument("host too small for overlap-0 term");
  double log1my = 0.0;
  for (int i = 0; i < p2; ++i)
    log1my += std::log1p(-static_cast<double>(p1) /
                         static_cast<double>(n - i));
  return -std::expm1(log1my);
}

namespace {

void check_scope(const MotifPattern& r) {
  if (r.klass == MotifClass::other_cyclic)
    throw std::invalid_argument(
        "variance formula applies only to acyclic motifs and p-cycles");
}

struct PbarResult {
  std::vector<double> pbar;  // proportion-scale estimate per pattern
  std::vector<std::string> warnings;
};

// Shared engine producing proportion-scale estimates for a family of
// patterns; cfg == nullptr means exact counting. One enumeration (or one
// sampling pass per iterate) per distinct pattern size.
PbarResult compute_pbars(const Graph& g,
                         const std::vector<const MotifPattern*>& pats,
                         const BootstrapConfig* cfg) {
  const int n = g.vertex_count();
  PbarResult res;
  res.pbar.assign(pats.size(), 0.0);
  std::map<int, std::vector<std::size_t>> by_size;
  for (std::size_t i = 0; i < pats.size(); ++i)
    by_size[pats[i]->p].push_back(i);

  if (cfg == nullptr) {
    for (const auto& [s, idxs] : by_size) {
      if (s > n) continue;  // no copies possible
      std::vector<const MotifPattern*> group;
      for (std::size_t i : idxs) group.push_back(pats[i]);
      CensusResult c = exact_copy_census(g, s, group);
      for (std::size_t k = 0; k < idxs.size(); ++k)
        res.pbar[idxs[k]] =
            c.totals[k] / placements_in_complete(*pats[idxs[k]], n);
    }
    return res;
  }

  const int B = cfg->B;
  if (B < 1) throw std::invalid_argument("B must be positive");
  std::vector<std::vector<double>> its(pats.size(),
                                       std::vector<double>(B, 0.0));
  if (cfg->scheme == Scheme::uniform) {
    const int max_p = by_size.rbegin()->first;
    if (cfg->m < max_p)
      throw std::invalid_argument(
          "uniform subsample smaller than the largest union pattern");
    if (cfg->m > n) throw std::invalid_argument("m exceeds host size");
    for (int b = 0; b < B; ++b) {
      Rng rng(derive_seed(cfg->seed, 1, static_cast<std::uint64_t>(b), 0));
      Graph sub = induced_subgraph(g, sample_vertex_subset(n, cfg->m, rng));
      for (const auto& [s, idxs] : by_size) {
        std::vector<const MotifPattern*> group;
        for (std::size_t i : idxs) group.push_back(pats[i]);
        CensusResult c = exact_copy_census(sub, s, group);
        for (std::size_t k = 0; k < idxs.size(); ++k)
          its[idxs[k]][b] =
              c.totals[k] / placements_in_complete(*pats[idxs[k]], cfg->m);
      }
    }
  } else if (cfg->scheme == Scheme::subgraph) {
    const int base_p = static_cast<int>(cfg->q.size());
    std::map<int, long long> leaves;
    for (int b = 0; b < B; ++b) {
      for (const auto& [s, idxs] : by_size) {
        if (s > n) continue;
        SamplingPlan plan = extend_plan(cfg->q, s);
        // Size equal to the motif reuses the plain bootstrap substream so the
        // point estimate here matches subgraph_bootstrap exactly.
        Rng rng(derive_seed(cfg->seed, 2, static_cast<std::uint64_t>(b),
                            s == base_p ? 0 : static_cast<std::uint64_t>(s)));
        std::vector<const MotifPattern*> group;
        for (std::size_t i : idxs) group.push_back(pats[i]);
        CensusResult c = sampled_copy_census(g, plan, rng, group);
        leaves[s] += c.leaves;
        const double pi = plan.inclusion_probability();
        for (std::size_t k = 0; k < idxs.size(); ++k)
          its[idxs[k]][b] =
              c.totals[k] /
              (pi * placements_in_complete(*pats[idxs[k]], n));
      }
    }
    for (const auto& [s, total] : leaves)
      if (static_cast<double>(total) / B < 10.0)
        res.warnings.push_back(
            "size-" + std::to_string(s) +
            " passes averaged fewer than 10 sampled leaves");
  } else {
    throw std::invalid_argument("bootstrap config must name a scheme");
  }
  for (std::size_t i = 0; i < pats.size(); ++i)
    res.pbar[i] = centered_mean(its[i]);
  return res;
}

// Common final assembly; called with identical inputs by the empirical and
// degenerate-bootstrap paths, which is what makes their outputs bit-equal.
VarianceEstimate assemble(const Graph& g, const MotifPattern& r1,
                          const MotifPattern* r2,
                          const std::vector<MergedPattern>& merged,
                          const std::vector<double>& pbar_w, double pbar_r1,
                          double pbar_r2, Scheme scheme) {
  const int n = g.vertex_count();
  const double rho = edge_density(g);
  if (rho == 0.0) throw std::runtime_error("degenerate density");

  VarianceEstimate out;
  out.motifs.push_back(r1);
  if (r2) out.motifs.push_back(*r2);
  out.scheme = scheme;
  out.n = n;
  out.rho_hat = rho;
  out.correction =
      r2 ? correction_y(n, r1.p, r2->p) : correction_x(n, r1.p);
  const double one_minus = 1.0 - out.correction;
  const double d =
      r2 ? std::pow(rho, r1.e + r2->e) * placements_in_complete(r1, n) *
               placements_in_complete(*r2, n)
         : std::pow(std::pow(rho, r1.e) * placements_in_complete(r1, n), 2);

  double weighted_sum = 0.0;
  for (std::size_t t = 0; t < merged.size(); ++t) {
    MergedTerm term;
    term.pattern = merged[t];
    term.pbar = pbar_w[t];
    term.count = pbar_w[t] * placements_in_complete(merged[t].w, n);
    const double w = static_cast<double>(merged[t].pair_multiplicity) *
                     term.count;
    term.contribution = static_cast<double>(n) * w / (one_minus * d);
    weighted_sum += w;
    out.terms.push_back(std::move(term));
  }

  out.estimate = std::pow(rho, -r1.e) * pbar_r1;
  out.estimate2 = r2 ? std::pow(rho, -r2->e) * pbar_r2 : out.estimate;
  const double raw = weighted_sum / (one_minus * d) -
                     out.correction * out.estimate * out.estimate2 /
                         one_minus;
  out.sigma2 = static_cast<double>(n) * raw;
  return out;
}

VarianceEstimate variance_impl(const Graph& g, const MotifPattern& r,
                               const BootstrapConfig* cfg) {
  check_scope(r);
  std::vector<MergedPattern> merged = merged_patterns(r);
  std::vector<const MotifPattern*> pats{&r};
  for (const auto& m : merged) pats.push_back(&m.w);
  PbarResult pb = compute_pbars(g, pats, cfg);
  std::vector<double> pbar_w(pb.pbar.begin() + 1, pb.pbar.end());
  VarianceEstimate out =
      assemble(g, r, nullptr, merged, pbar_w, pb.pbar[0], 0.0,
               cfg ? cfg->scheme : Scheme::exact);
  out.warnings.insert(out.warnings.end(), pb.warnings.begin(),
                      pb.warnings.end());
  return out;
}

VarianceEstimate covariance_impl(const Graph& g, const MotifPattern& r1,
                                 const MotifPattern& r2,
                                 const BootstrapConfig* cfg) {
  check_scope(r1);
  check_scope(r2);
  std::vector<MergedPattern> merged = merged_patterns_cross(r1, r2);
  std::vector<const MotifPattern*> pats{&r1, &r2};
  for (const auto& m : merged) pats.push_back(&m.w);
  PbarResult pb = compute_pbars(g, pats, cfg);
  std::vector<double> pbar_w(pb.pbar.begin() + 2, pb.pbar.end());
  VarianceEstimate out =
      assemble(g, r1, &r2, merged, pbar_w, pb.pbar[0], pb.pbar[1],
               cfg ? cfg->scheme : Scheme::exact);
  out.warnings.insert(out.warnings.end(), pb.warnings.begin(),
                      pb.warnings.end());
  return out;
}

}  // namespace

VarianceEstimate empirical_variance(const Graph& g, const MotifPattern& r) {
  return variance_impl(g, r, nullptr);
}

std::vector<VarianceEstimate> empirical_variances(
    const Graph& g, const std::vector<MotifPattern>& motifs) {
  // Build the union of all needed patterns, count once per size, then slice
  // the results back out per motif.
  std::vector<std::vector<MergedPattern>> merged(motifs.size());
  std::vector<const MotifPattern*> pats;
  std::vector<std::size_t> offsets;
  for (std::size_t i = 0; i < motifs.size(); ++i) {
    check_scope(motifs[i]);
    merged[i] = merged_patterns(motifs[i]);
    offsets.push_back(pats.size());
    pats.push_back(&motifs[i]);
    for (const auto& m : merged[i]) pats.push_back(&m.w);
  }
  PbarResult pb = compute_pbars(g, pats, nullptr);
  std::vector<VarianceEstimate> out;
  for (std::size_t i = 0; i < motifs.size(); ++i) {
    const std::size_t at = offsets[i];
    std::vector<double> pbar_w(pb.pbar.begin() + at + 1,
                               pb.pbar.begin() + at + 1 + merged[i].size());
    out.push_back(assemble(g, motifs[i], nullptr, merged[i], pbar_w,
                           pb.pbar[at], 0.0, Scheme::exact));
  }
  return out;
}

VarianceEstimate empirical_covariance(const Graph& g, const MotifPattern& r1,
                                      const MotifPattern& r2) {
  return covariance_impl(g, r1, r2, nullptr);
}

VarianceEstimate bootstrap_variance(const Graph& g, const MotifPattern& r,
                                    const BootstrapConfig& cfg) {
  return variance_impl(g, r, &cfg);
}

VarianceEstimate bootstrap_covariance(const Graph& g, const MotifPattern& r1,
                                      const MotifPattern& r2,
                                      const BootstrapConfig& cfg) {
  return covariance_impl(g, r1, r2, &cfg);
}

CovarianceMatrix covariance_matrix(const Graph& g,
                                   const std::vector<MotifPattern>& motifs,
                                   const BootstrapConfig* cfg) {
  const std::size_t k = motifs.size();
  CovarianceMatrix out;
  out.motifs = motifs;
  out.sigma.assign(k, std::vector<double>(k, 0.0));
  for (std::size_t i = 0; i < k; ++i) {
    VarianceEstimate v = cfg ? bootstrap_variance(g, motifs[i], *cfg)
                             : empirical_variance(g, motifs[i]);
    out.sigma[i][i] = v.sigma2;
    for (std::size_t j = i + 1; j < k; ++j) {
      VarianceEstimate c =
          cfg ? bootstrap_covariance(g, motifs[i], motifs[j], *cfg)
              : empirical_covariance(g, motifs[i], motifs[j]);
      out.sigma[i][j] = out.sigma[j][i] = c.sigma2;
    }
  }
  return out;
}

void symmetric_eigen(std::vector<std::vector<double>> a,
                     std::vector<double>& w,
                     std::vector<std::vector<double>>& v) {
  const std::size_t k = a.size();
  v.assign(k, std::vector<double>(k, 0.0));
  for (std::size_t i = 0; i < k; ++i) v[i][i] = 1.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < k; ++p)
      for (std::size_t q = p + 1; q < k; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < k; ++p)
      for (std::size_t q = p + 1; q < k; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (std::size_t i = 0; i < k; ++i) {
          const double aip = a[i][p], aiq = a[i][q];
          a[i][p] = c * aip - s * aiq;
          a[i][q] = s * aip + c * aiq;
        }
        for (std::size_t i = 0; i < k; ++i) {
          const double api = a[p][i], aqi = a[q][i];
          a[p][i] = c * api - s * aqi;
          a[q][i] = s * api + c * aqi;
        }
        for (std::size_t i = 0; i < k; ++i) {
          const double vip = v[i][p], viq = v[i][q];
          v[i][p] = c * vip - s * viq;
          v[i][q] = s * vip + c * viq;
        }
      }
  }
  w.resize(k);
  for (std::size_t i = 0; i < k; ++i) w[i] = a[i][i];
  // Sort ascending, carrying the (column) eigenvectors along.
  std::vector<std::size_t> order(k);
  for (std::size_t i = 0; i < k; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return w[x] < w[y]; });
  std::vector<double> w2(k);
  std::vector<std::vector<double>> v2(k, std::vector<double>(k));
  for (std::size_t i = 0; i < k; ++i) {
    w2[i] = w[order[i]];
    for (std::size_t r = 0; r < k; ++r) v2[i][r] = v[r][order[i]];
  }
  w = std::move(w2);
  v = std::move(v2);  // v[i] is now the eigenvector for w[i]
}

void psd_repair(CovarianceMatrix& m) {
  const std::size_t k = m.sigma.size();
  if (k == 0) return;
  std::vector<double> w;
  std::vector<std::vector<double>> vecs;
  symmetric_eigen(m.sigma, w, vecs);
  bool negative = false;
  for (double x : w)
    if (x < 0.0) negative = true;
  if (!negative) return;
  m.psd_repaired = true;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      double s = 0.0;
      for (std::size_t t = 0; t < k; ++t)
        if (w[t] > 0.0) s += w[t] * vecs[t][i] * vecs[t][j];
      m.sigma[i][j] = s;
    }
}

double delta_variance(const std::vector<double>& values,
                      const CovarianceMatrix& sigma,
                      const std::vector<double>& gradient) {
  const std::size_t k = sigma.sigma.size();
  if (values.size() != k || gradient.size() != k)
    throw std::invalid_argument("delta method dimension mismatch");
  for (double gi : gradient)
    if (!std::isfinite(gi))
      throw std::invalid_argument("non-finite gradient");
  double out = 0.0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      out += gradient[i] * sigma.sigma[i][j] * gradient[j];
  return out;
}

std::pair<double, double> transitivity_gradient(double a, double b) {
  const double s = a + b;
  if (s == 0.0) throw std::invalid_argument("gradient undefined at a+b=0");
  return {b / (s * s), -a / (s * s)};
}

}  // namespace graphboot
