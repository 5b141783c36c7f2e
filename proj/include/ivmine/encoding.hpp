#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ivmine/bitset.hpp"
#include "ivmine/distributional.hpp"
#include "ivmine/interval.hpp"

namespace ivmine {

using ItemId = std::size_t;
using ObjectId = std::size_t;

// A cell of a dataset: a point value, an interval value or a distribution.
using CellValue = std::variant<double, Interval, Cdf>;

// One variable of a vocabulary. Distribution-valued variables carry one or
// more alpha levels; each level owns a separate block of items ("slot").
struct VariableSpec {
  std::string name;
  Language language = Language::kI;
  ThresholdGrid grid{0.0, {}, 1.0, 1.0};
  std::vector<double> alphas;

  std::size_t slot_count() const noexcept { return alphas.empty() ? 1 : alphas.size(); }
};

struct Item {
  std::size_t variable = 0;
  std::size_t slot = 0;
  Atom atom;
};

// Atom families present in a language, in vocabulary order.
std::vector<AtomKind> language_families(Language lang);

// Non-virtual atoms of every variable, totally ordered by variable, slot,
// family (CapGt < CapLe < SubGt < SubLe, NumGt < NumLe) and threshold index.
// Item ids are positions in that order.
class ItemVocabulary {
 public:
  ItemVocabulary() = default;
  explicit ItemVocabulary(std::vector<VariableSpec> variables);

  std::size_t size() const noexcept { return items_.size(); }
  const std::vector<VariableSpec>& variables() const noexcept { return variables_; }
  const VariableSpec& variable(std::size_t v) const { return variables_.at(v); }
  const Item& item(ItemId id) const { return items_.at(id); }

  ItemId block_begin(std::size_t var, std::size_t slot) const;
  std::size_t block_size(std::size_t var) const;
  Bitset block_mask(std::size_t var, std::size_t slot) const;

  // Throws kInvalidAtom for virtual or out-of-range atoms.
  ItemId id_of(std::size_t var, std::size_t slot, const Atom& atom) const;

  // Atom text with the alpha tag of distribution slots, e.g. "cap>s2@0.1".
  std::string item_text(ItemId id) const;

 private:
  std::vector<VariableSpec> variables_;
  std::vector<std::size_t> var_begin_;
  std::vector<Item> items_;
};

struct EncodedObject {
  ObjectId id = 0;
  Bitset items;
  std::optional<std::string> label;
};

// Objects as itemsets over a vocabulary. Immutable once built.
class EncodedDataset {
 public:
  EncodedDataset() = default;
  EncodedDataset(ItemVocabulary vocabulary, std::vector<EncodedObject> objects);

  const ItemVocabulary& vocabulary() const noexcept { return vocabulary_; }
  const std::vector<EncodedObject>& objects() const noexcept { return objects_; }
  std::size_t size() const noexcept { return objects_.size(); }
  bool empty() const noexcept { return objects_.empty(); }
  // Objects holding each item.
  const Bitset& item_extent(ItemId id) const { return item_extents_.at(id); }
  bool has_labels() const;

  friend bool operator==(const EncodedDataset& a, const EncodedDataset& b);

 private:
  ItemVocabulary vocabulary_;
  std::vector<EncodedObject> objects_;
  std::vector<Bitset> item_extents_;
};

// Maximal representation R(q): every non-virtual atom implied by q.
Bitset encode_pattern(const IntervalPattern& q, const ItemVocabulary& voc, std::size_t var = 0,
                      std::size_t slot = 0);

// Inverse of encode_pattern. Rejects itemsets that are not closed prefixes
// (lower families) and suffixes (upper families) of the block.
IntervalPattern decode_pattern(const Bitset& items, const ItemVocabulary& voc, std::size_t var = 0,
                               std::size_t slot = 0);

// R(d(o)) unioned over variables; one value per variable.
Bitset encode_object(std::span<const CellValue> values, const ItemVocabulary& voc);

// Objects whose itemset contains `items`.
Bitset ext(const Bitset& items, const EncodedDataset& ds);

// Items shared by every object of the extent. An empty extent yields the
// whole vocabulary (top of the itemset lattice).
Bitset intent(const Bitset& extent, const EncodedDataset& ds);
Bitset intent(std::span<const ObjectId> ids, const EncodedDataset& ds);

// int(ext(items)); nullopt when no object supports `items`.
std::optional<Bitset> closure(const Bitset& items, const EncodedDataset& ds);

// Readable statement of an itemset, one clause per non-trivial variable slot.
std::string interpretation_text(const Bitset& items, const ItemVocabulary& voc);

}  // namespace ivmine
