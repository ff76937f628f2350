#pragma once

#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace graphboot {

// Sorted distinct vertex ids.
using VertexSet = std::vector<int>;

// Immutable undirected simple graph in CSR form. Adjacency lists are sorted,
// so neighbor iteration is O(deg) and adjacency queries O(log deg). For small
// graphs (n <= kDenseLimit) a dense bit matrix is kept for O(1) queries;
// subgraph census code leans on this.
class Graph {
 public:
  static constexpr int kDenseLimit = 4096;

  Graph() = default;
  // Edges are normalized: self-loops dropped, duplicates collapsed.
  Graph(int n, std::vector<std::pair<int, int>> edges);

  int vertex_count() const { return n_; }
  long long edge_count() const { return m_; }
  int degree(int v) const { return offsets_[v + 1] - offsets_[v]; }
  double mean_degree() const {
    return n_ == 0 ? 0.0 : 2.0 * static_cast<double>(m_) / n_;
  }

  std::span<const int> neighbors_of(int v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }

  bool has_edge(int u, int v) const {
    if (u == v) return false;
    if (!dense_.empty())
      return (dense_[static_cast<std::size_t>(u) * dense_words_ + (v >> 6)] >>
              (v & 63)) &
             1u;
    return has_edge_sparse(u, v);
  }

  std::vector<std::pair<int, int>> edges() const;

  long long self_loops_dropped() const { return self_loops_dropped_; }
  long long duplicates_collapsed() const { return duplicates_collapsed_; }

 private:
  bool has_edge_sparse(int u, int v) const;

  int n_ = 0;
  long long m_ = 0;
  std::vector<int> offsets_{0};
  std::vector<int> adj_;
  std::vector<std::uint64_t> dense_;
  std::size_t dense_words_ = 0;
  long long self_loops_dropped_ = 0;
  long long duplicates_collapsed_ = 0;
};

struct LoadResult {
  Graph graph;
  std::vector<std::string> labels;  // dense id -> original label
  long long self_loops_dropped = 0;
  long long duplicates_collapsed = 0;
};

// Reads "u v" or "u,v" records, one per line; '#' lines are comments.
// Labels are arbitrary strings, densely re-indexed in order of first
// appearance. Throws std::runtime_error with a line number on bad records.
LoadResult load_edge_list(std::istream& in);

void write_edge_list(std::ostream& out, const Graph& g);

// Result re-indexed 0..|s|-1 preserving the sorted order of s.
Graph induced_subgraph(const Graph& g, const VertexSet& s);

// Union of neighborhoods of s, minus s itself.
VertexSet neighbors(const Graph& g, const VertexSet& s);

}  // namespace graphboot
