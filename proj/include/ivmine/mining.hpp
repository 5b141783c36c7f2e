#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ivmine/bitset.hpp"
#include "ivmine/encoding.hpp"

namespace ivmine {

// A closed itemset with its extent. Extents are bit positions into
// EncodedDataset::objects().
struct Concept {
  Bitset intent;
  Bitset extent;
  std::size_t support = 0;

  friend bool operator==(const Concept&, const Concept&) = default;
};

struct MiningConfig {
  std::size_t min_support = 1;  // absolute count
  bool emit_lattice_edges = false;
};

enum class MiningStatus { kOk, kEmptyDataset };

struct MiningResult {
  std::vector<Concept> concepts;
  // (parent, child) indices into `concepts`; filled on request.
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  MiningStatus status = MiningStatus::kOk;
};

// Converts a support fraction in ]0,1] to an absolute count (ceiling).
std::size_t absolute_min_support(double fraction, std::size_t objects);

// Every closed itemset with support >= min_support, found by Close-by-One
// over the item order. Sorted by support (descending) then intent.
MiningResult mine_closed(const EncodedDataset& ds, const MiningConfig& cfg);

// Testing oracle: closes every object subset (<= 16 objects) or every
// itemset (<= 24 items). Same ordering as mine_closed.
MiningResult brute_force_closed(const EncodedDataset& ds, const MiningConfig& cfg);

// Covering pairs of the intent-inclusion order among the given concepts.
std::vector<std::pair<std::size_t, std::size_t>> lattice_edges(const std::vector<Concept>& concepts);

void sort_concepts(std::vector<Concept>& concepts);

}  // namespace ivmine
