#include "ivmine/mining.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "ivmine/error.hpp"

namespace ivmine {
namespace {

void validate(const EncodedDataset& ds, const MiningConfig& cfg) {
  if (cfg.min_support < 1 || cfg.min_support > ds.size())
    throw Error(ErrorCode::kInvalidArgument, "min support " + std::to_string(cfg.min_support) +
                                                 " outside 1.." + std::to_string(ds.size()));
}

class CloseByOne {
 public:
  CloseByOne(const EncodedDataset& ds, std::size_t min_support)
      : ds_(ds), min_support_(min_support), items_(ds.vocabulary().size()) {}

  std::vector<Concept> run() {
    const Bitset all = Bitset::full(ds_.size());
    descend(all, intent(all, ds_), 0);
    return std::move(out_);
  }

 private:
  void descend(const Bitset& extent, const Bitset& closed, std::size_t start) {
    out_.push_back({closed, extent, extent.count()});
    for (std::size_t j = start; j < items_; ++j) {
      if (closed.test(j)) continue;
      Bitset child_extent = extent & ds_.item_extent(j);
      if (child_extent.count() < min_support_) continue;

      // Close the child, rejecting it as soon as an item before j enters.
      Bitset child = closed;
      child.set(j);
      bool canonical = true;
      for (std::size_t i = 0; i < items_; ++i) {
        if (child.test(i) || !child_extent.is_subset_of(ds_.item_extent(i))) continue;
        if (i < j) {
          canonical = false;
          break;
        }
        child.set(i);
      }
      if (canonical) descend(child_extent, child, j + 1);
    }
  }

  const EncodedDataset& ds_;
  std::size_t min_support_;
  std::size_t items_;
  std::vector<Concept> out_;
};

}  // namespace

std::size_t absolute_min_support(double fraction, std::size_t objects) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw Error(ErrorCode::kInvalidArgument, "relative support must lie in ]0,1]");
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(objects) - 1e-9)));
}

void sort_concepts(std::vector<Concept>& concepts) {
  std::vector<std::vector<std::size_t>> keys;
  keys.reserve(concepts.size());
  for (const auto& c : concepts) keys.push_back(c.intent.indices());
  std::vector<std::size_t> order(concepts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (concepts[a].support != concepts[b].support) return concepts[a].support > concepts[b].support;
    return keys[a] < keys[b];
  });
  std::vector<Concept> sorted;
  sorted.reserve(concepts.size());
  for (std::size_t i : order) sorted.push_back(std::move(concepts[i]));
  concepts = std::move(sorted);
}

MiningResult mine_closed(const EncodedDataset& ds, const MiningConfig& cfg) {
  MiningResult result;
  if (ds.empty()) {
    result.status = MiningStatus::kEmptyDataset;
    return result;
  }
  validate(ds, cfg);
  result.concepts = CloseByOne(ds, cfg.min_support).run();
  sort_concepts(result.concepts);
  if (cfg.emit_lattice_edges) result.edges = lattice_edges(result.concepts);
  return result;
}

MiningResult brute_force_closed(const EncodedDataset& ds, const MiningConfig& cfg) {
  MiningResult result;
  if (ds.empty()) {
    result.status = MiningStatus::kEmptyDataset;
    return result;
  }
  validate(ds, cfg);
  const std::size_t n = ds.size();
  const std::size_t m = ds.vocabulary().size();
  std::unordered_set<Bitset, BitsetHash> seen;
  auto add = [&](const Bitset& closed) {
    const Bitset e = ext(closed, ds);
    if (e.count() < cfg.min_support || !seen.insert(closed).second) return;
    result.concepts.push_back({closed, e, e.count()});
  };

  if (n <= 16) {
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      Bitset e(n);
      for (std::size_t i = 0; i < n; ++i)
        if ((mask >> i) & 1U) e.set(i);
      add(intent(e, ds));
    }
  } else if (m <= 24) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
      Bitset items(m);
      for (std::size_t i = 0; i < m; ++i)
        if ((mask >> i) & 1U) items.set(i);
      if (const auto closed = closure(items, ds)) add(*closed);
    }
  } else {
    throw Error(ErrorCode::kGuardExceeded, "brute force limited to 16 objects or 24 items");
  }
  sort_concepts(result.concepts);
  if (cfg.emit_lattice_edges) result.edges = lattice_edges(result.concepts);
  return result;
}

std::vector<std::pair<std::size_t, std::size_t>> lattice_edges(const std::vector<Concept>& concepts) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t c = 0; c < concepts.size(); ++c) {
    std::vector<std::size_t> above;
    for (std::size_t p = 0; p < concepts.size(); ++p) {
      if (p != c && concepts[p].intent.is_subset_of(concepts[c].intent) &&
          !(concepts[p].intent == concepts[c].intent))
        above.push_back(p);
    }
    for (std::size_t p : above) {
      const bool covered = std::none_of(above.begin(), above.end(), [&](std::size_t r) {
        return r != p && concepts[p].intent.is_subset_of(concepts[r].intent) &&
               !(concepts[p].intent == concepts[r].intent);
      });
      if (covered) edges.emplace_back(p, c);
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace ivmine
