#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "graphboot/graph.hpp"
#include "graphboot/rng.hpp"

namespace graphboot {

// Breadth-first layer ordering: ranks assigned layer by layer from vertex 0,
// ascending id inside a layer, restarting at the lowest unvisited vertex when
// a component is exhausted.
struct Ordering {
  std::vector<int> rank;   // rank[v] = position of v
  std::vector<int> order;  // order[i] = vertex with rank i
};

Ordering assign_order(const Graph& g);

struct SamplingPlan {
  int p = 0;
  std::vector<double> q;  // retention probability per depth, length p

  void validate() const {
    if (p < 1 || static_cast<int>(q.size()) != p)
      throw std::invalid_argument("sampling plan needs length(q) == p");
    for (double qd : q)
      if (!(qd > 0.0) || qd > 1.0)
        throw std::invalid_argument("q_d must lie in (0,1]");
  }
  double inclusion_probability() const {
    double pi = 1.0;
    for (double qd : q) pi *= qd;
    return pi;
  }
};

namespace esu_detail {

// Core tree search. Visit receives the leaf's vertices in insertion order
// plus the induced-adjacency bitmask over those positions (bit j(j-1)/2+i for
// position pair i<j). Coin(depth) gates the root call (depth 1) and every
// extension (depth 2..p); depth-d coins fire once per candidate reached.
template <class Visit, class Coin>
long long run(const Graph& g, int p, const std::vector<int>& rank,
              Visit&& visit, Coin&& coin) {
  const int n = g.vertex_count();
  if (p < 1) throw std::invalid_argument("subgraph size must be positive");
  if (p > n) throw std::invalid_argument("subgraph size exceeds graph size");
  long long leaves = 0;

  std::vector<int> sub(p);
  if (p == 1) {
    for (int v = 0; v < n; ++v)
      if (coin(1)) {
        sub[0] = v;
        visit(sub.data(), 1, std::uint64_t{0});
        ++leaves;
      }
    return leaves;
  }

  std::vector<char> blocked(n, 0);
  std::vector<std::vector<int>> ext(p + 1);    // extension list per depth
  std::vector<std::vector<int>> undo(p + 1);   // vertices blocked at a depth
  std::vector<std::vector<int>> fresh(p + 1);  // new candidates at a depth
  int root = 0;

  auto by_rank = [&](int a, int b) { return rank[a] < rank[b]; };

  auto extend = [&](auto&& self, int d, std::uint64_t mask) -> void {
    auto& cand = ext[d];
    for (std::size_t idx = 0; idx < cand.size(); ++idx) {
      const int w = cand[idx];
      std::uint64_t child_mask = mask;
      for (int i = 0; i < d; ++i)
        if (g.has_edge(sub[i], w))
          child_mask |= std::uint64_t{1} << (d * (d - 1) / 2 + i);
      if (d + 1 == p) {
        if (coin(p)) {
          sub[d] = w;
          visit(sub.data(), p, child_mask);
          ++leaves;
        }
        continue;
      }
      if (!coin(d + 1)) continue;
      sub[d] = w;
      auto& added = undo[d + 1];
      added.clear();
      for (int u : g.neighbors_of(w))
        if (!blocked[u]) {
          blocked[u] = 1;
          added.push_back(u);
        }
      // Remaining candidates are already rank-sorted; only the handful of
      // fresh exclusive neighbors needs sorting before the merge.
      auto& news = fresh[d + 1];
      news.clear();
      for (int u : added)
        if (rank[u] > rank[root]) news.push_back(u);
      std::sort(news.begin(), news.end(), by_rank);
      auto& child = ext[d + 1];
      child.clear();
      std::merge(cand.begin() + idx + 1, cand.end(), news.begin(),
                 news.end(), std::back_inserter(child), by_rank);
      self(self, d + 1, child_mask);
      for (int u : added) blocked[u] = 0;
    }
  };

  for (int v = 0; v < n; ++v) {
    if (!coin(1)) continue;
    root = v;
    sub[0] = v;
    blocked[v] = 1;
    auto& rootext = ext[1];
    rootext.clear();
    for (int u : g.neighbors_of(v)) {
      blocked[u] = 1;
      if (rank[u] > rank[v]) rootext.push_back(u);
    }
    std::sort(rootext.begin(), rootext.end(), by_rank);
    extend(extend, 1, 0);
    blocked[v] = 0;
    for (int u : g.neighbors_of(v)) blocked[u] = 0;
  }
  return leaves;
}

}  // namespace esu_detail

// Visits every connected induced p-vertex subset exactly once; returns the
// leaf count.
long long enumerate_connected_subsets(
    const Graph& g, int p, const std::function<void(const VertexSet&)>& visit);

// RAND-ESU: each leaf retained with probability prod q_d.
long long sample_connected_subsets(
    const Graph& g, const SamplingPlan& plan, Rng& rng,
    const std::function<void(const VertexSet&)>& visit);

// Deterministic-coin variant for exhaustive oracles in tests: `coin(depth)`
// supplies the outcome of each gate in traversal order.
long long sample_connected_subsets_with_coins(
    const Graph& g, int p, const std::function<bool(int)>& coin,
    const std::function<void(const VertexSet&)>& visit);

}  // namespace graphboot
