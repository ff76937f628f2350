#include "graphboot/census.hpp"

#include <stdexcept>

namespace graphboot {

MaskCensus::MaskCensus(int p, std::vector<const MotifPattern*> patterns)
    : p_(p), bits_(p * (p - 1) / 2), patterns_(std::move(patterns)) {
  if (p < 1 || p > kMaxPatternVertices)
    throw std::invalid_argument("census size out of range");
  for (const MotifPattern* r : patterns_)
    if (r->p != p)
      throw std::invalid_argument("census pattern size mismatch");
  if (bits_ <= kDirectBits) direct_.assign(std::size_t{1} << bits_, 0);
}

long long MaskCensus::leaves() const {
  long long total = 0;
  if (!direct_.empty())
    for (long long c : direct_) total += c;
  else
    for (const auto& [mask, c] : sparse_) total += c;
  return total;
}

std::vector<double> MaskCensus::copies_for_mask(std::uint64_t mask) const {
  std::vector<std::pair<int, int>> host = edges_from_mask(p_, mask);
  std::vector<double> out(patterns_.size());
  for (std::size_t k = 0; k < patterns_.size(); ++k)
    out[k] = static_cast<double>(count_spanning_copies(*patterns_[k], p_, host));
  return out;
}

std::vector<double> MaskCensus::totals() const {
  std::vector<double> acc(patterns_.size(), 0.0);
  auto fold = [&](std::uint64_t mask, long long c) {
    if (c == 0) return;
    std::vector<double> per = copies_for_mask(mask);
    for (std::size_t k = 0; k < per.size(); ++k)
      acc[k] += per[k] * static_cast<double>(c);
  };
  if (!direct_.empty()) {
    for (std::uint64_t mask = 0; mask < direct_.size(); ++mask)
      fold(mask, direct_[mask]);
  } else {
    for (const auto& [mask, c] : sparse_) fold(mask, c);
  }
  return acc;
}

void MaskCensus::reset() {
  if (!direct_.empty())
    direct_.assign(direct_.size(), 0);
  else
    sparse_.clear();
}

namespace {

template <class Coin>
CensusResult run_census(const Graph& g, int p,
                        const std::vector<const MotifPattern*>& pats,
                        const Coin& coin) {
  MaskCensus census(p, pats);
  CensusResult res;
  if (p > g.vertex_count()) {
    // No p-subsets exist; all totals are zero.
    res.totals.assign(pats.size(), 0.0);
    return res;
  }
  Ordering ord = assign_order(g);
  res.leaves = esu_detail::run(
      g, p, ord.rank,
      [&](const int*, int, std::uint64_t mask) { census.add(mask); }, coin);
  res.totals = census.totals();
  return res;
}

}  // namespace

CensusResult exact_copy_census(const Graph& g, int p,
                               const std::vector<const MotifPattern*>& pats) {
  return run_census(g, p, pats, [](int) { return true; });
}

CensusResult sampled_copy_census(const Graph& g, const SamplingPlan& plan,
                                 Rng& rng,
                                 const std::vector<const MotifPattern*>& pats) {
  plan.validate();
  return run_census(g, plan.p, pats, [&](int d) {
    double qd = plan.q[d - 1];
    return qd >= 1.0 || rng.bernoulli(qd);
  });
}

}  // namespace graphboot
