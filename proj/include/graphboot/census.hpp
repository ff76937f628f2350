#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "graphboot/esu.hpp"
#include "graphboot/graph.hpp"
#include "graphboot/motif.hpp"
#include "graphboot/rng.hpp"

namespace graphboot {

// Accumulates spanning-copy counts of several p-vertex patterns over a stream
// of leaf adjacency bitmasks (the masks emitted by the ESU core). The hot path
// is a single counter bump per leaf keyed by mask; per-pattern copy counts are
// multiplied out once at the end over the distinct masks seen, so the cost of
// the factorial-ish copy counting is paid per isomorphism-relevant mask, not
// per leaf. Masks with at most kDirectBits pair bits use a flat table.
class MaskCensus {
 public:
  static constexpr int kDirectBits = 22;

  MaskCensus(int p, std::vector<const MotifPattern*> patterns);

  void add(std::uint64_t mask) {
    if (!direct_.empty())
      ++direct_[mask];
    else
      ++sparse_[mask];
  }

  long long leaves() const;

  // totals()[k] = sum over added leaves of count_spanning_copies(pattern k).
  std::vector<double> totals() const;

  void reset();

 private:
  std::vector<double> copies_for_mask(std::uint64_t mask) const;

  int p_;
  int bits_;
  std::vector<const MotifPattern*> patterns_;
  std::vector<long long> direct_;
  std::unordered_map<std::uint64_t, long long> sparse_;
};

// One exact ESU pass at size p; returns per-pattern totals of spanning copies
// over all connected induced p-subsets, plus the leaf count.
struct CensusResult {
  std::vector<double> totals;
  long long leaves = 0;
};

CensusResult exact_copy_census(const Graph& g, int p,
                               const std::vector<const MotifPattern*>& pats);

// One RAND-ESU pass; totals cover retained leaves only (no inverse-probability
// weighting here — callers divide by the plan's inclusion probability).
CensusResult sampled_copy_census(const Graph& g, const SamplingPlan& plan,
                                 Rng& rng,
                                 const std::vector<const MotifPattern*>& pats);

}  // namespace graphboot
