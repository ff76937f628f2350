#include "graphboot/graph.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace graphboot {

Graph::Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  std::vector<std::pair<int, int>> clean;
  clean.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw std::out_of_range("edge endpoint out of range");
    if (u == v) {
      ++self_loops_dropped_;
      continue;
    }
    clean.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(clean.begin(), clean.end());
  auto last = std::unique(clean.begin(), clean.end());
  duplicates_collapsed_ = clean.end() - last;
  clean.erase(last, clean.end());
  m_ = static_cast<long long>(clean.size());

  std::vector<int> deg(n, 0);
  for (auto [u, v] : clean) {
    ++deg[u];
    ++deg[v];
  }
  offsets_.assign(n + 1, 0);
  for (int v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + deg[v];
  adj_.resize(static_cast<std::size_t>(2) * m_);
  std::vector<int> cursor(offsets_.begin(), offsets_.end() - 1);
  for (auto [u, v] : clean) {
    adj_[cursor[u]++] = v;
    adj_[cursor[v]++] = u;
  }
  for (int v = 0; v < n; ++v)
    std::sort(adj_.begin() + offsets_[v], adj_.begin() + offsets_[v + 1]);

  if (n > 0 && n <= kDenseLimit) {
    dense_words_ = static_cast<std::size_t>((n + 63) / 64);
    dense_.assign(dense_words_ * n, 0);
    for (auto [u, v] : clean) {
      dense_[static_cast<std::size_t>(u) * dense_words_ + (v >> 6)] |=
          std::uint64_t{1} << (v & 63);
      dense_[static_cast<std::size_t>(v) * dense_words_ + (u >> 6)] |=
          std::uint64_t{1} << (u & 63);
    }
  }
}

bool Graph::has_edge_sparse(int u, int v) const {
  auto nb = neighbors_of(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(static_cast<std::size_t>(m_));
  for (int u = 0; u < n_; ++u)
    for (int v : neighbors_of(u))
      if (u < v) out.emplace_back(u, v);
  return out;
}

LoadResult load_edge_list(std::istream& in) {
  std::unordered_map<std::string, int> index;
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> edges;
  std::string line;
  long long lineno = 0;
  auto intern = [&](const std::string& tok) {
    auto [it, inserted] = index.emplace(tok, static_cast<int>(labels.size()));
    if (inserted) labels.push_back(tok);
    return it->second;
  };
  while (std::getline(in, line)) {
    ++lineno;
    // Strip comments and normalize separators.
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    for (char& c : line)
      if (c == ',' || c == '\t' || c == '\r') c = ' ';
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a)) continue;  // blank line
    if (!(ls >> b) || (ls >> extra))
      throw std::runtime_error("edge list parse error at line " +
                               std::to_string(lineno) +
                               ": expected two labels");
    // Intern left-to-right explicitly: the order of evaluation of the two
    // arguments in emplace_back(intern(a), intern(b)) is unspecified, and
    // vertex ids should follow first appearance in the file.
    int ia = intern(a);
    int ib = intern(b);
    edges.emplace_back(ia, ib);
  }
  if (labels.empty()) throw std::runtime_error("edge list is empty");
  LoadResult res;
  res.graph = Graph(static_cast<int>(labels.size()), std::move(edges));
  res.labels = std::move(labels);
  res.self_loops_dropped = res.graph.self_loops_dropped();
  res.duplicates_collapsed = res.graph.duplicates_collapsed();
  return res;
}

void write_edge_list(std::ostream& out, const Graph& g) {
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

Graph induced_subgraph(const Graph& g, const VertexSet& s) {
  const int k = static_cast<int>(s.size());
  for (int i = 0; i < k; ++i) {
    if (s[i] < 0 || s[i] >= g.vertex_count())
      throw std::out_of_range("vertex set member out of range");
    if (i > 0 && s[i] <= s[i - 1])
      throw std::invalid_argument("vertex set must be strictly increasing");
  }
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (g.has_edge(s[i], s[j])) edges.emplace_back(i, j);
  return Graph(k, std::move(edges));
}

VertexSet neighbors(const Graph& g, const VertexSet& s) {
  if (s.empty()) throw std::invalid_argument("vertex set must be nonempty");
  std::vector<char> in_s(g.vertex_count(), 0), seen(g.vertex_count(), 0);
  for (int v : s) {
    if (v < 0 || v >= g.vertex_count())
      throw std::out_of_range("vertex set member out of range");
    in_s[v] = 1;
  }
  VertexSet out;
  for (int v : s)
    for (int u : g.neighbors_of(v))
      if (!in_s[u] && !seen[u]) {
        seen[u] = 1;
        out.push_back(u);
      }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace graphboot
