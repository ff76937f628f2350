#include "graphboot/models.hpp"

#include <cmath>
#include <stdexcept>

namespace graphboot {

void SbmSpec::validate() const {
  const int k = blocks();
  if (k < 1) throw std::invalid_argument("need at least one block");
  if (static_cast<int>(S.size()) != k)
    throw std::invalid_argument("S dimension mismatch");
  double total = 0.0;
  for (double p : pi) {
    if (p <= 0.0) throw std::invalid_argument("pi entries must be positive");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("pi must sum to 1");
  if (!(s_n > 0.0) || s_n > 1.0)
    throw std::invalid_argument("s_n must lie in (0,1]");
  for (int a = 0; a < k; ++a) {
    if (static_cast<int>(S[a].size()) != k)
      throw std::invalid_argument("S dimension mismatch");
    for (int b = 0; b < k; ++b) {
      if (std::abs(S[a][b] - S[b][a]) > 1e-12)
        throw std::invalid_argument("S must be symmetric");
      const double fab = f(a, b);
      if (!(fab >= 0.0) || fab > 1.0)
        throw std::invalid_argument("edge probabilities must lie in [0,1]");
    }
  }
}

double SbmSpec::rho() const {
  double out = 0.0;
  for (int a = 0; a < blocks(); ++a)
    for (int b = 0; b < blocks(); ++b) out += pi[a] * pi[b] * f(a, b);
  return out;
}

namespace {

// Map a flat index into the strictly-lower-triangular pair list: k -> (i, j)
// with i < j and k = j(j-1)/2 + i.
std::pair<int, int> triangular_pair(long long k) {
  long long j = static_cast<long long>(
      (1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(k))) / 2.0);
  while (j * (j - 1) / 2 > k) --j;
  while ((j + 1) * j / 2 <= k) ++j;
  return {static_cast<int>(k - j * (j - 1) / 2), static_cast<int>(j)};
}

// Bernoulli(p) over a flat index space of `total` pairs, via geometric gap
// sampling; emit(k) for each success.
template <class Emit>
void skip_sample(long long total, double p, Rng& rng, const Emit& emit) {
  if (p <= 0.0 || total <= 0) return;
  if (p >= 1.0) {
    for (long long k = 0; k < total; ++k) emit(k);
    return;
  }
  long long k = -1;
  while (true) {
    k += 1 + rng.geometric_skip(p);
    if (k >= total) break;
    emit(k);
  }
}

}  // namespace

SbmSample sample_sbm(int n, const SbmSpec& spec, Rng& rng) {
  spec.validate();
  const int kb = spec.blocks();
  SbmSample out;
  out.labels.resize(n);
  std::vector<std::vector<int>> members(kb);
  for (int i = 0; i < n; ++i) {
    double u = rng.uniform();
    int a = kb - 1;
    double acc = 0.0;
    for (int b = 0; b < kb; ++b) {
      acc += spec.pi[b];
      if (u < acc) {
        a = b;
        break;
      }
    }
    out.labels[i] = a;
    members[a].push_back(i);
  }
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < kb; ++a) {
    const auto& va = members[a];
    const long long sa = static_cast<long long>(va.size());
    skip_sample(sa * (sa - 1) / 2, spec.f(a, a), rng, [&](long long k) {
      auto [i, j] = triangular_pair(k);
      edges.emplace_back(va[i], va[j]);
    });
    for (int b = a + 1; b < kb; ++b) {
      const auto& vb = members[b];
      const long long sb = static_cast<long long>(vb.size());
      skip_sample(sa * sb, spec.f(a, b), rng, [&](long long k) {
        edges.emplace_back(va[k / sb], vb[k % sb]);
      });
    }
  }
  out.graph = Graph(n, std::move(edges));
  return out;
}

GraphonSample sample_graphon(int n, const GraphonSpec& spec, Rng& rng) {
  if (!spec.w) throw std::invalid_argument("graphon function not set");
  if (!(spec.rho_n > 0.0) || spec.rho_n > 1.0)
    throw std::invalid_argument("rho_n must lie in (0,1]");
  GraphonSample out;
  out.xi.resize(n);
  for (int i = 0; i < n; ++i) out.xi[i] = rng.uniform();
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double wij = spec.w(out.xi[i], out.xi[j]);
      if (std::isnan(wij) || wij < 0.0)
        throw std::runtime_error("graphon evaluated to an invalid value");
      const double h = std::min(spec.rho_n * wij, 1.0);  // caps +inf too
      if (rng.bernoulli(h)) edges.emplace_back(i, j);
    }
  out.graph = Graph(n, std::move(edges));
  return out;
}

double sbm_moment(const MotifPattern& r, const SbmSpec& spec) {
  spec.validate();
  const int kb = spec.blocks();
  if (r.p > 12) throw std::invalid_argument("motif too large for moment sum");
  double assignments = std::pow(static_cast<double>(kb), r.p);
  if (assignments > 1e8)
    throw std::invalid_argument("K^p too large for moment sum");
  std::vector<int> label(r.p, 0);
  double total = 0.0;
  while (true) {
    double term = 1.0;
    for (int v = 0; v < r.p; ++v) term *= spec.pi[label[v]];
    for (auto [u, v] : r.edges) term *= spec.f(label[u], label[v]);
    total += term;
    int pos = 0;
    while (pos < r.p && ++label[pos] == kb) label[pos++] = 0;
    if (pos == r.p) break;
  }
  return total / std::pow(spec.rho(), r.e);
}

SbmSpec benchmark_sbm(double nu, int n) {
  SbmSpec spec;
  spec.pi = {0.5, 0.5};
  spec.S = {{0.4, 0.45}, {0.45, 0.7}};
  spec.s_n = 5.0 * nu * std::sqrt(static_cast<double>(n)) / n;
  spec.validate();
  return spec;
}

GraphonSpec pfa_graphon(double rho_n) {
  GraphonSpec spec;
  spec.rho_n = rho_n;
  spec.w = [](double u, double v) {
    return 0.25 / std::sqrt((1.0 - u) * (1.0 - v));
  };
  return spec;
}

}  // namespace graphboot
