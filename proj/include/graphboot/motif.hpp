#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace graphboot {

// Brute-force isomorphism machinery is exact but factorial; patterns larger
// than this are rejected.
constexpr int kMaxPatternVertices = 10;

enum class MotifClass { acyclic, p_cycle, other_cyclic };

// A small connected pattern on vertices 0..p-1 with cached automorphism count.
struct MotifPattern {
  int p = 0;
  int e = 0;
  std::vector<std::pair<int, int>> edges;  // canonical: first<second, sorted
  long long aut = 1;
  MotifClass klass = MotifClass::acyclic;
  std::string name;  // spec string it was parsed from, for reporting
};

// Validates connectivity, canonicalizes edges, computes aut and class.
MotifPattern make_pattern(int p, std::vector<std::pair<int, int>> edges,
                          std::string name = "");

// Hub vertex 0 with l arms of length k: kl+1 vertices, kl edges.
MotifPattern wheel(int k, int l);
// Ring on p >= 3 vertices; aut = 2p.
MotifPattern cycle(int p);

MotifPattern edge_pattern();
MotifPattern vee_pattern();       // (1,2)-wheel, path on 3 vertices
MotifPattern triangle_pattern();  // 3-cycle

// "edge" | "vee" | "triangle" | "cycle:p" | "wheel:k,l" | "custom:0-1,1-2,..."
MotifPattern parse_motif(const std::string& spec);

// Edge bitmask layout shared with the subgraph-census code: the edge {i,j}
// with i < j occupies bit j(j-1)/2 + i. Supports p <= 11.
constexpr int pair_bit(int i, int j) { return j * (j - 1) / 2 + i; }
std::uint64_t edge_mask(const std::vector<std::pair<int, int>>& edges);
std::vector<std::pair<int, int>> edges_from_mask(int p, std::uint64_t mask);

// Number of permutations of 0..p-1 mapping the edge set onto itself.
long long automorphism_count(int p,
                             const std::vector<std::pair<int, int>>& edges);

bool is_isomorphic(int pa, const std::vector<std::pair<int, int>>& ea, int pb,
                   const std::vector<std::pair<int, int>>& eb);
bool is_isomorphic(const MotifPattern& a, const MotifPattern& b);

// Distinct (non-induced) copies of r in a host on exactly r.p vertices that
// span all host vertices; host edges given as pairs on 0..r.p-1.
long long count_spanning_copies(const MotifPattern& r, int p_host,
                                const std::vector<std::pair<int, int>>& host);

// One isomorphism type of a union W = S u T of two motif copies overlapping
// in exactly `overlap` vertices. `pair_multiplicity` is the number of ordered
// copy pairs (S, T) inside W with that overlap whose union is all of W; the
// variance estimators weight each counted copy of W by it.
struct MergedPattern {
  MotifPattern w;
  int overlap = 1;
  long long pair_multiplicity = 0;
};

// All union types with S,T ~ r and |S n T| in {1, p}.
std::vector<MergedPattern> merged_patterns(const MotifPattern& r);
// All union types with S ~ r1, T ~ r2 and |S n T| = 1.
std::vector<MergedPattern> merged_patterns_cross(const MotifPattern& r1,
                                                 const MotifPattern& r2);

}  // namespace graphboot
