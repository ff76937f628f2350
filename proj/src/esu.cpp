#include "graphboot/esu.hpp"

#include <algorithm>

namespace graphboot {

Ordering assign_order(const Graph& g) {
  const int n = g.vertex_count();
  Ordering ord;
  ord.rank.assign(n, -1);
  ord.order.reserve(n);
  int next_start = 0;
  std::vector<int> queue;
  queue.reserve(n);
  while (static_cast<int>(ord.order.size()) < n) {
    while (next_start < n && ord.rank[next_start] >= 0) ++next_start;
    queue.clear();
    queue.push_back(next_start);
    ord.rank[next_start] = static_cast<int>(ord.order.size());
    ord.order.push_back(next_start);
    std::size_t head = 0;
    while (head < queue.size()) {
      std::size_t layer_end = queue.size();
      std::vector<int> next_layer;
      for (; head < layer_end; ++head)
        for (int u : g.neighbors_of(queue[head]))
          if (ord.rank[u] < 0) {
            ord.rank[u] = 0;  // provisional mark; real rank set below
            next_layer.push_back(u);
          }
      std::sort(next_layer.begin(), next_layer.end());
      for (int u : next_layer) {
        ord.rank[u] = static_cast<int>(ord.order.size());
        ord.order.push_back(u);
        queue.push_back(u);
      }
    }
  }
  return ord;
}

namespace {

template <class Coin>
long long run_sorted(const Graph& g, int p, const Coin& coin,
                     const std::function<void(const VertexSet&)>& visit) {
  Ordering ord = assign_order(g);
  VertexSet sorted(p);
  return esu_detail::run(
      g, p, ord.rank,
      [&](const int* verts, int k, std::uint64_t) {
        sorted.assign(verts, verts + k);
        std::sort(sorted.begin(), sorted.end());
        visit(sorted);
      },
      coin);
}

}  // namespace

long long enumerate_connected_subsets(
    const Graph& g, int p,
    const std::function<void(const VertexSet&)>& visit) {
  return run_sorted(g, p, [](int) { return true; }, visit);
}

long long sample_connected_subsets(
    const Graph& g, const SamplingPlan& plan, Rng& rng,
    const std::function<void(const VertexSet&)>& visit) {
  plan.validate();
  return run_sorted(
      g, plan.p,
      [&](int d) {
        double qd = plan.q[d - 1];
        return qd >= 1.0 || rng.bernoulli(qd);
      },
      visit);
}

long long sample_connected_subsets_with_coins(
    const Graph& g, int p, const std::function<bool(int)>& coin,
    const std::function<void(const VertexSet&)>& visit) {
  return run_sorted(g, p, coin, visit);
}

}  // namespace graphboot
