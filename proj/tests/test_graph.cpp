#include <doctest.h>

#include <sstream>

#include "graphboot/graph.hpp"

using namespace graphboot;

TEST_CASE("edge list parsing handles comments, commas and labels") {
  std::istringstream in(
      "# a comment line\n"
      "a b\n"
      "b,c\n"
      "c\ta   # trailing comment\n"
      "\n"
      "d a\n");
  LoadResult res = load_edge_list(in);
  CHECK(res.graph.vertex_count() == 4);
  CHECK(res.graph.edge_count() == 4);
  CHECK(res.labels[0] == "a");
  CHECK(res.labels[3] == "d");
  CHECK(res.graph.has_edge(0, 1));  // a-b
  CHECK(res.graph.has_edge(1, 2));  // b-c
  CHECK(res.graph.has_edge(2, 0));  // c-a
  CHECK(res.graph.has_edge(3, 0));  // d-a
}

TEST_CASE("edge list errors") {
  std::istringstream empty("# nothing\n\n");
  CHECK_THROWS_AS(load_edge_list(empty), std::runtime_error);
  std::istringstream bad("a b\nx y z\n");
  CHECK_THROWS_WITH_AS(load_edge_list(bad),
                       doctest::Contains("line 2"), std::runtime_error);
}

TEST_CASE("self loops dropped and duplicates collapsed") {
  Graph g(3, {{0, 1}, {1, 0}, {1, 1}, {1, 2}, {1, 2}});
  CHECK(g.edge_count() == 2);
  CHECK(g.self_loops_dropped() == 1);
  CHECK(g.duplicates_collapsed() == 2);
  CHECK(g.degree(1) == 2);
  CHECK_FALSE(g.has_edge(1, 1));
}

TEST_CASE("adjacency queries agree between dense and sparse paths") {
  // Same structure; the sparse path is forced via a graph too large for the
  // dense matrix by checking only the small prefix.
  std::vector<std::pair<int, int>> edges{{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  Graph small(4, edges);
  Graph big(Graph::kDenseLimit + 10, edges);
  for (int u = 0; u < 4; ++u)
    for (int v = 0; v < 4; ++v) CHECK(small.has_edge(u, v) == big.has_edge(u, v));
}

TEST_CASE("induced subgraph relabels and validates") {
  Graph g(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  Graph sub = induced_subgraph(g, {1, 2, 4});
  CHECK(sub.vertex_count() == 3);
  CHECK(sub.edge_count() == 1);  // only 1-2 survives
  CHECK(sub.has_edge(0, 1));
  CHECK_THROWS_AS(induced_subgraph(g, {2, 1}), std::invalid_argument);
  CHECK_THROWS_AS(induced_subgraph(g, {0, 9}), std::out_of_range);
}

TEST_CASE("neighborhood of a set") {
  Graph g(6, {{0, 1}, {0, 2}, {1, 3}, {4, 5}});
  CHECK(neighbors(g, {0}) == VertexSet{1, 2});
  CHECK(neighbors(g, {0, 1}) == VertexSet{2, 3});
  CHECK(neighbors(g, {4}) == VertexSet{5});
  CHECK_THROWS_AS(neighbors(g, {}), std::invalid_argument);
}

TEST_CASE("write/read round trip") {
  Graph g(4, {{0, 1}, {1, 2}, {2, 3}});
  std::ostringstream out;
  write_edge_list(out, g);
  std::istringstream in(out.str());
  LoadResult res = load_edge_list(in);
  CHECK(res.graph.edge_count() == g.edge_count());
  CHECK(res.graph.vertex_count() == g.vertex_count());
}
