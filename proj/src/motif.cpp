#include "graphboot/motif.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace graphboot {
namespace {

// Adjacency-row bitmask view of a small graph; enough for every pattern and
// merged-union size this module handles.
struct Small {
  int p = 0;
  std::vector<std::uint32_t> adj;

  Small(int n, const std::vector<std::pair<int, int>>& edges)
      : p(n), adj(static_cast<std::size_t>(n), 0) {
    for (auto [u, v] : edges) {
      adj[u] |= 1u << v;
      adj[v] |= 1u << u;
    }
  }
  bool has(int u, int v) const { return (adj[u] >> v) & 1u; }
  int deg(int v) const { return __builtin_popcount(adj[v]); }
};

bool connected(const Small& g) {
  if (g.p == 0) return false;
  std::uint32_t seen = 1, frontier = 1;
  while (frontier) {
    std::uint32_t next = 0;
    for (int v = 0; v < g.p; ++v)
      if ((frontier >> v) & 1u) next |= g.adj[v];
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == (g.p >= 32 ? ~0u : (1u << g.p) - 1);
}

// Vertex order of `a` in which every vertex after the first is adjacent to an
// earlier one; makes the embedding search prune on adjacency.
std::vector<int> search_order(const Small& a) {
  std::vector<int> order;
  std::uint32_t placed = 0;
  order.push_back(0);
  placed |= 1u;
  while (static_cast<int>(order.size()) < a.p) {
    int pick = -1;
    for (int v = 0; v < a.p; ++v)
      if (!((placed >> v) & 1u) && (a.adj[v] & placed)) {
        pick = v;
        break;
      }
    if (pick < 0) {  // disconnected pattern; take lowest unplaced
      for (int v = 0; v < a.p && pick < 0; ++v)
        if (!((placed >> v) & 1u)) pick = v;
    }
    order.push_back(pick);
    placed |= 1u << pick;
  }
  return order;
}

// Enumerates injective maps of `a` into `b` that carry edges of `a` onto
// edges of `b`. `sink(map)` is called for each; returning false stops early.
template <typename Sink>
void for_each_embedding(const Small& a, const Small& b, Sink&& sink) {
  const auto order = search_order(a);
  std::vector<int> map(a.p, -1);
  std::uint32_t used = 0;
  bool stop = false;

  auto rec = [&](auto&& self, int pos) -> void {
    if (stop) return;
    if (pos == a.p) {
      if (!sink(map)) stop = true;
      return;
    }
    const int v = order[pos];
    for (int cand = 0; cand < b.p && !stop; ++cand) {
      if ((used >> cand) & 1u) continue;
      if (b.deg(cand) < a.deg(v)) continue;
      bool ok = true;
      for (int j = 0; j < pos; ++j) {
        const int w = order[j];
        if (a.has(v, w) && !b.has(cand, map[w])) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      map[v] = cand;
      used |= 1u << cand;
      self(self, pos + 1);
      used &= ~(1u << cand);
      map[v] = -1;
    }
  };
  rec(rec, 0);
}

long long count_edge_preserving_bijections(const Small& a, const Small& b) {
  long long count = 0;
  for_each_embedding(a, b, [&](const std::vector<int>&) {
    ++count;
    return true;
  });
  return count;
}

std::vector<std::pair<int, int>> canonical_edges(
    std::vector<std::pair<int, int>> edges) {
  for (auto& [u, v] : edges)
    if (u > v) std::swap(u, v);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

void check_size(int p) {
  if (p > kMaxPatternVertices)
    throw std::invalid_argument("pattern exceeds size limit (" +
                                std::to_string(kMaxPatternVertices) +
                                " vertices)");
}

struct CopyInSmall {
  std::uint32_t vmask;
  std::uint64_t emask;
  bool operator<(const CopyInSmall& o) const {
    return emask != o.emask ? emask < o.emask : vmask < o.vmask;
  }
};

// Distinct subgraph copies of r inside w (vertex set + edge set).
std::vector<CopyInSmall> copies_inside(const MotifPattern& r, const Small& w) {
  const Small rs(r.p, r.edges);
  std::set<CopyInSmall> found;
  for_each_embedding(rs, w, [&](const std::vector<int>& map) {
    CopyInSmall c{0, 0};
    for (int v = 0; v < r.p; ++v) c.vmask |= 1u << map[v];
    for (auto [u, v] : r.edges) {
      int a = map[u], b = map[v];
      if (a > b) std::swap(a, b);
      c.emask |= std::uint64_t{1} << pair_bit(a, b);
    }
    found.insert(c);
    return true;
  });
  return {found.begin(), found.end()};
}

long long ordered_pair_multiplicity(const std::vector<CopyInSmall>& s_copies,
                                    const std::vector<CopyInSmall>& t_copies,
                                    int overlap, std::uint64_t w_mask) {
  long long mu = 0;
  for (const auto& s : s_copies)
    for (const auto& t : t_copies)
      if (__builtin_popcount(s.vmask & t.vmask) == overlap &&
          (s.emask | t.emask) == w_mask)
        ++mu;
  return mu;
}

MergedPattern make_merged(int p_w, std::uint64_t mask, const MotifPattern& r1,
                          const MotifPattern& r2, int overlap) {
  MergedPattern mp;
  mp.w = make_pattern(p_w, edges_from_mask(p_w, mask));
  mp.overlap = overlap;
  const Small ws(mp.w.p, mp.w.edges);
  auto s_copies = copies_inside(r1, ws);
  auto t_copies =
      (&r1 == &r2 || (r1.p == r2.p && edge_mask(r1.edges) ==
                                          edge_mask(r2.edges)))
          ? s_copies
          : copies_inside(r2, ws);
  mp.pair_multiplicity =
      ordered_pair_multiplicity(s_copies, t_copies, overlap, mask);
  return mp;
}

// Union types of one copy of r1 and one copy of r2 glued at a single vertex.
std::vector<MergedPattern> overlap_one_types(const MotifPattern& r1,
                                             const MotifPattern& r2) {
  const int p_w = r1.p + r2.p - 1;
  check_size(r1.p);
  check_size(r2.p);
  std::vector<std::pair<int, std::uint64_t>> reps;  // (p_w, mask) survivors
  std::vector<MotifPattern> rep_patterns;
  for (int u = 0; u < r1.p; ++u) {
    for (int v = 0; v < r2.p; ++v) {
      // r1 keeps its ids; r2's vertex v maps to u, the rest shift up.
      std::vector<std::pair<int, int>> edges = r1.edges;
      auto relabel = [&](int x) {
        if (x == v) return u;
        return r1.p + (x < v ? x : x - 1);
      };
      for (auto [a, b] : r2.edges) edges.emplace_back(relabel(a), relabel(b));
      edges = canonical_edges(std::move(edges));
      MotifPattern cand = make_pattern(p_w, edges);
      bool fresh = true;
      for (const auto& seen : rep_patterns)
        if (is_isomorphic(seen, cand)) {
          fresh = false;
          break;
        }
      if (fresh) {
        rep_patterns.push_back(cand);
        reps.emplace_back(p_w, edge_mask(cand.edges));
      }
    }
  }
  std::vector<MergedPattern> out;
  for (auto [pw, mask] : reps) out.push_back(make_merged(pw, mask, r1, r2, 1));
  return out;
}

}  // namespace

std::uint64_t edge_mask(const std::vector<std::pair<int, int>>& edges) {
  std::uint64_t m = 0;
  for (auto [u, v] : edges) m |= std::uint64_t{1} << pair_bit(u, v);
  return m;
}

std::vector<std::pair<int, int>> edges_from_mask(int p, std::uint64_t mask) {
  std::vector<std::pair<int, int>> out;
  for (int j = 1; j < p; ++j)
    for (int i = 0; i < j; ++i)
      if ((mask >> pair_bit(i, j)) & 1u) out.emplace_back(i, j);
  return out;
}

MotifPattern make_pattern(int p, std::vector<std::pair<int, int>> edges,
                          std::string name) {
  if (p < 1) throw std::invalid_argument("pattern needs at least one vertex");
  for (auto [u, v] : edges)
    if (u < 0 || u >= p || v < 0 || v >= p || u == v)
      throw std::invalid_argument("bad pattern edge");
  MotifPattern r;
  r.p = p;
  r.edges = canonical_edges(std::move(edges));
  r.e = static_cast<int>(r.edges.size());
  r.name = std::move(name);
  Small s(p, r.edges);
  if (!connected(s)) throw std::invalid_argument("pattern must be connected");
  r.aut = automorphism_count(p, r.edges);
  if (r.e == p - 1) {
    r.klass = MotifClass::acyclic;
  } else if (r.e == p) {
    bool all2 = true;
    for (int v = 0; v < p; ++v) all2 &= s.deg(v) == 2;
    r.klass = all2 ? MotifClass::p_cycle : MotifClass::other_cyclic;
  } else {
    r.klass = MotifClass::other_cyclic;
  }
  return r;
}

MotifPattern wheel(int k, int l) {
  if (k < 1 || l < 1) throw std::invalid_argument("wheel needs k,l >= 1");
  std::vector<std::pair<int, int>> edges;
  for (int arm = 0; arm < l; ++arm) {
    int first = arm * k + 1;
    edges.emplace_back(0, first);
    for (int i = 1; i < k; ++i)
      edges.emplace_back(first + i - 1, first + i);
  }
  return make_pattern(k * l + 1, std::move(edges),
                      "wheel:" + std::to_string(k) + "," + std::to_string(l));
}

MotifPattern cycle(int p) {
  if (p < 3) throw std::invalid_argument("cycle needs p >= 3");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < p; ++i) edges.emplace_back(i, (i + 1) % p);
  return make_pattern(p, std::move(edges), "cycle:" + std::to_string(p));
}

MotifPattern edge_pattern() { return make_pattern(2, {{0, 1}}, "edge"); }
MotifPattern vee_pattern() {
  return make_pattern(3, {{0, 1}, {0, 2}}, "vee");
}
MotifPattern triangle_pattern() {
  return make_pattern(3, {{0, 1}, {0, 2}, {1, 2}}, "triangle");
}

MotifPattern parse_motif(const std::string& spec) {
  if (spec == "edge") return edge_pattern();
  if (spec == "vee") return vee_pattern();
  if (spec == "triangle") return triangle_pattern();
  auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string rest =
      colon == std::string::npos ? "" : spec.substr(colon + 1);
  try {
    if (head == "cycle") return cycle(std::stoi(rest));
    if (head == "wheel") {
      auto comma = rest.find(',');
      if (comma == std::string::npos) throw std::invalid_argument(spec);
      return wheel(std::stoi(rest.substr(0, comma)),
                   std::stoi(rest.substr(comma + 1)));
    }
    if (head == "custom") {
      std::vector<std::pair<int, int>> edges;
      int maxv = 0;
      std::size_t pos = 0;
      while (pos < rest.size()) {
        auto comma = rest.find(',', pos);
        std::string tok = rest.substr(pos, comma == std::string::npos
                                               ? std::string::npos
                                               : comma - pos);
        auto dash = tok.find('-');
        if (dash == std::string::npos) throw std::invalid_argument(spec);
        int u = std::stoi(tok.substr(0, dash));
        int v = std::stoi(tok.substr(dash + 1));
        maxv = std::max({maxv, u, v});
        edges.emplace_back(u, v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
      auto r = make_pattern(maxv + 1, std::move(edges));
      r.name = spec;
      return r;
    }
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("cannot parse motif spec '" + spec + "'");
  }
  throw std::invalid_argument("cannot parse motif spec '" + spec + "'");
}

long long automorphism_count(int p,
                             const std::vector<std::pair<int, int>>& edges) {
  check_size(p);
  Small g(p, canonical_edges(edges));
  return count_edge_preserving_bijections(g, g);
}

bool is_isomorphic(int pa, const std::vector<std::pair<int, int>>& ea, int pb,
                   const std::vector<std::pair<int, int>>& eb) {
  check_size(pa);
  check_size(pb);
  auto ca = canonical_edges(ea), cb = canonical_edges(eb);
  if (pa != pb || ca.size() != cb.size()) return false;
  Small a(pa, ca), b(pb, cb);
  std::vector<int> da, db;
  for (int v = 0; v < pa; ++v) da.push_back(a.deg(v));
  for (int v = 0; v < pb; ++v) db.push_back(b.deg(v));
  std::sort(da.begin(), da.end());
  std::sort(db.begin(), db.end());
  if (da != db) return false;
  bool found = false;
  for_each_embedding(a, b, [&](const std::vector<int>&) {
    found = true;
    return false;  // stop at first
  });
  return found;
}

bool is_isomorphic(const MotifPattern& a, const MotifPattern& b) {
  return is_isomorphic(a.p, a.edges, b.p, b.edges);
}

long long count_spanning_copies(const MotifPattern& r, int p_host,
                                const std::vector<std::pair<int, int>>& host) {
  if (p_host != r.p)
    throw std::invalid_argument("host must have exactly r.p vertices");
  Small h(p_host, canonical_edges(host));
  Small rs(r.p, r.edges);
  return count_edge_preserving_bijections(rs, h) / r.aut;
}

std::vector<MergedPattern> merged_patterns(const MotifPattern& r) {
  check_size(r.p);
  std::vector<MergedPattern> out = overlap_one_types(r, r);
  // Overlap p: unions of two (possibly equal) spanning copies on one vertex
  // set; generated as r joined with each permuted image of itself.
  std::vector<int> perm(r.p);
  std::iota(perm.begin(), perm.end(), 0);
  const std::uint64_t base = edge_mask(r.edges);
  std::set<std::uint64_t> union_masks;
  do {
    std::uint64_t m = base;
    for (auto [u, v] : r.edges) {
      int a = perm[u], b = perm[v];
      if (a > b) std::swap(a, b);
      m |= std::uint64_t{1} << pair_bit(a, b);
    }
    union_masks.insert(m);
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::vector<MotifPattern> reps;
  for (std::uint64_t m : union_masks) {
    MotifPattern cand = make_pattern(r.p, edges_from_mask(r.p, m));
    bool fresh = true;
    for (const auto& seen : reps)
      if (is_isomorphic(seen, cand)) {
        fresh = false;
        break;
      }
    if (!fresh) continue;
    reps.push_back(cand);
    out.push_back(make_merged(r.p, edge_mask(cand.edges), r, r, r.p));
  }
  return out;
}

std::vector<MergedPattern> merged_patterns_cross(const MotifPattern& r1,
                                                 const MotifPattern& r2) {
  return overlap_one_types(r1, r2);
}

}  // namespace graphboot
