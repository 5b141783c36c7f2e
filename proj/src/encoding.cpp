#include "ivmine/encoding.hpp"

#include <algorithm>
#include <sstream>

#include "ivmine/error.hpp"

namespace ivmine {
namespace {

std::string alpha_tag(double alpha) {
  std::ostringstream os;
  os.precision(10);
  os << alpha;
  return os.str();
}

std::size_t family_position(Language lang, AtomKind kind) {
  const auto fams = language_families(lang);
  const auto it = std::find(fams.begin(), fams.end(), kind);
  if (it == fams.end())
    throw Error(ErrorCode::kInvalidAtom, "atom family " + std::string(atom_symbol(kind)) +
                                             " not in language " + std::string(to_string(lang)));
  return static_cast<std::size_t>(it - fams.begin());
}

Bitset encode_atom_range(const Atom& atom, const ItemVocabulary& voc, std::size_t var,
                         std::size_t slot, Bitset out) {
  const std::size_t k = voc.variable(var).grid.k();
  if (atom.index > k + 1)
    throw Error(ErrorCode::kGridMismatch, "atom " + atom_text(atom) + " does not fit a grid with k=" +
                                              std::to_string(k));
  if (is_lower_kind(atom.kind)) {
    for (std::size_t i = 1; i <= std::min(atom.index, k); ++i)
      out.set(voc.id_of(var, slot, {atom.kind, i}));
  } else {
    for (std::size_t i = std::max<std::size_t>(atom.index, 1); i <= k; ++i)
      out.set(voc.id_of(var, slot, {atom.kind, i}));
  }
  return out;
}

}  // namespace

std::vector<AtomKind> language_families(Language lang) {
  switch (lang) {
    case Language::kNum: return {AtomKind::kNumGt, AtomKind::kNumLe};
    case Language::kC: return {AtomKind::kSubGt, AtomKind::kSubLe};
    case Language::kI: return {AtomKind::kCapGt, AtomKind::kCapLe};
    case Language::kIC:
      return {AtomKind::kCapGt, AtomKind::kCapLe, AtomKind::kSubGt, AtomKind::kSubLe};
  }
  return {};
}

ItemVocabulary::ItemVocabulary(std::vector<VariableSpec> variables)
    : variables_(std::move(variables)) {
  for (std::size_t v = 0; v < variables_.size(); ++v) {
    const VariableSpec& spec = variables_[v];
    for (double a : spec.alphas) (void)AlphaLevel{a};
    if (!spec.alphas.empty() && spec.language != Language::kI && spec.language != Language::kIC)
      throw Error(ErrorCode::kInvalidArgument,
                  "distribution variables support languages i and ic only");
    var_begin_.push_back(items_.size());
    const std::size_t k = spec.grid.k();
    for (std::size_t slot = 0; slot < spec.slot_count(); ++slot)
      for (AtomKind kind : language_families(spec.language))
        for (std::size_t i = 1; i <= k; ++i) items_.push_back({v, slot, {kind, i}});
  }
}

ItemId ItemVocabulary::block_begin(std::size_t var, std::size_t slot) const {
  if (var >= variables_.size()) throw Error(ErrorCode::kInvalidArgument, "unknown variable index");
  if (slot >= variables_[var].slot_count())
    throw Error(ErrorCode::kInvalidArgument, "unknown alpha slot");
  return var_begin_[var] + slot * block_size(var);
}

std::size_t ItemVocabulary::block_size(std::size_t var) const {
  const VariableSpec& spec = variables_.at(var);
  return language_families(spec.language).size() * spec.grid.k();
}

Bitset ItemVocabulary::block_mask(std::size_t var, std::size_t slot) const {
  Bitset mask(size());
  const ItemId begin = block_begin(var, slot);
  for (std::size_t i = 0; i < block_size(var); ++i) mask.set(begin + i);
  return mask;
}

ItemId ItemVocabulary::id_of(std::size_t var, std::size_t slot, const Atom& atom) const {
  const VariableSpec& spec = variables_.at(var);
  const std::size_t k = spec.grid.k();
  if (atom.index < 1 || atom.index > k)
    throw Error(ErrorCode::kInvalidAtom, "atom " + atom_text(atom) + " has no item (k=" +
                                             std::to_string(k) + ")");
  return block_begin(var, slot) + family_position(spec.language, atom.kind) * k + (atom.index - 1);
}

std::string ItemVocabulary::item_text(ItemId id) const {
  const Item& it = item(id);
  std::string text = atom_text(it.atom);
  const VariableSpec& spec = variables_[it.variable];
  if (!spec.alphas.empty()) text += "@" + alpha_tag(spec.alphas[it.slot]);
  return text;
}

EncodedDataset::EncodedDataset(ItemVocabulary vocabulary, std::vector<EncodedObject> objects)
    : vocabulary_(std::move(vocabulary)), objects_(std::move(objects)) {
  std::vector<ObjectId> ids;
  ids.reserve(objects_.size());
  for (const auto& o : objects_) {
    if (o.items.size() != vocabulary_.size())
      throw Error(ErrorCode::kInvalidArgument,
                  "object " + std::to_string(o.id) + " itemset does not match the vocabulary");
    ids.push_back(o.id);
  }
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
    throw Error(ErrorCode::kInvalidArgument, "duplicate object ids");

  item_extents_.assign(vocabulary_.size(), Bitset(objects_.size()));
  for (std::size_t pos = 0; pos < objects_.size(); ++pos)
    objects_[pos].items.for_each([&](std::size_t item) { item_extents_[item].set(pos); });
}

bool EncodedDataset::has_labels() const {
  return !objects_.empty() &&
         std::all_of(objects_.begin(), objects_.end(), [](const auto& o) { return o.label.has_value(); });
}

bool operator==(const EncodedDataset& a, const EncodedDataset& b) {
  if (a.objects_.size() != b.objects_.size() || a.vocabulary_.size() != b.vocabulary_.size())
    return false;
  for (std::size_t v = 0; v < a.vocabulary_.variables().size(); ++v) {
    const auto& x = a.vocabulary_.variable(v);
    const auto& y = b.vocabulary_.variable(v);
    if (x.name != y.name || x.language != y.language || !(x.grid == y.grid) || x.alphas != y.alphas)
      return false;
  }
  for (std::size_t i = 0; i < a.objects_.size(); ++i) {
    const auto& x = a.objects_[i];
    const auto& y = b.objects_[i];
    if (x.id != y.id || !(x.items == y.items) || x.label != y.label) return false;
  }
  return true;
}

Bitset encode_pattern(const IntervalPattern& q, const ItemVocabulary& voc, std::size_t var,
                      std::size_t slot) {
  const VariableSpec& spec = voc.variable(var);
  if (q.language != spec.language)
    throw Error(ErrorCode::kLanguageMismatch, "pattern language " + std::string(to_string(q.language)) +
                                                  " differs from variable language " +
                                                  std::string(to_string(spec.language)));
  Bitset out(voc.size());
  if (q.bottom) return voc.block_mask(var, slot);
  out = encode_atom_range(q.lower, voc, var, slot, std::move(out));
  out = encode_atom_range(q.upper, voc, var, slot, std::move(out));
  if (q.extra_lower) out = encode_atom_range(*q.extra_lower, voc, var, slot, std::move(out));
  if (q.extra_upper) out = encode_atom_range(*q.extra_upper, voc, var, slot, std::move(out));
  return out;
}

IntervalPattern decode_pattern(const Bitset& items, const ItemVocabulary& voc, std::size_t var,
                               std::size_t slot) {
  const VariableSpec& spec = voc.variable(var);
  const std::size_t k = spec.grid.k();
  std::vector<std::size_t> bound;
  for (AtomKind kind : language_families(spec.language)) {
    std::vector<bool> present(k + 2, false);
    for (std::size_t i = 1; i <= k; ++i) present[i] = items.test(voc.id_of(var, slot, {kind, i}));
    if (is_lower_kind(kind)) {
      // {1..m}: greatest present index, all below it present.
      std::size_t m = 0;
      while (m < k && present[m + 1]) ++m;
      for (std::size_t i = m + 1; i <= k; ++i)
        if (present[i])
          throw Error(ErrorCode::kInvalidRepresentation,
                      "family " + std::string(atom_symbol(kind)) + " is not a closed prefix");
      bound.push_back(m);
    } else {
      // {j..k}: smallest present index, all above it present.
      std::size_t j = k + 1;
      while (j > 1 && present[j - 1]) --j;
      for (std::size_t i = 1; i < j; ++i)
        if (present[i])
          throw Error(ErrorCode::kInvalidRepresentation,
                      "family " + std::string(atom_symbol(kind)) + " is not a closed suffix");
      bound.push_back(j);
    }
  }
  if (spec.language == Language::kIC)
    return IntervalPattern::make_ic(bound[0], bound[1], bound[2], bound[3]);
  IntervalPattern q = IntervalPattern::make(spec.language, bound[0], bound[1]);
  if (q.bottom) return IntervalPattern::bottom_of(spec.language, k);
  return q;
}

Bitset encode_object(std::span<const CellValue> values, const ItemVocabulary& voc) {
  if (values.size() != voc.variables().size())
    throw Error(ErrorCode::kInvalidArgument, "object has " + std::to_string(values.size()) +
                                                 " values for " +
                                                 std::to_string(voc.variables().size()) + " variables");
  Bitset out(voc.size());
  for (std::size_t v = 0; v < values.size(); ++v) {
    const VariableSpec& spec = voc.variable(v);
    const ThresholdGrid& grid = spec.grid;
    if (const auto* f = std::get_if<Cdf>(&values[v])) {
      if (spec.alphas.empty())
        throw Error(ErrorCode::kInvalidArgument,
                    "variable " + spec.name + " holds distributions but has no alpha level");
      for (std::size_t slot = 0; slot < spec.alphas.size(); ++slot) {
        const Interval delta = delta_alpha(*f, AlphaLevel(spec.alphas[slot]), grid.epsilon());
        out |= encode_pattern(describe(delta, grid, spec.language), voc, v, slot);
      }
      continue;
    }
    if (!spec.alphas.empty())
      throw Error(ErrorCode::kInvalidArgument,
                  "variable " + spec.name + " expects distributions");
    Interval delta;
    if (const auto* y = std::get_if<double>(&values[v]))
      delta = spec.language == Language::kNum ? Interval::point(*y, grid.epsilon())
                                              : point_interval(*y, grid);
    else
      delta = std::get<Interval>(values[v]);
    out |= encode_pattern(describe(delta, grid, spec.language), voc, v, 0);
  }
  return out;
}

Bitset ext(const Bitset& items, const EncodedDataset& ds) {
  Bitset out = Bitset::full(ds.size());
  items.for_each([&](std::size_t item) { out &= ds.item_extent(item); });
  return out;
}

Bitset intent(const Bitset& extent, const EncodedDataset& ds) {
  if (extent.size() != ds.size())
    throw Error(ErrorCode::kUnknownObject, "extent width does not match the dataset");
  Bitset out = Bitset::full(ds.vocabulary().size());
  extent.for_each([&](std::size_t pos) { out &= ds.objects()[pos].items; });
  return out;
}

Bitset intent(std::span<const ObjectId> ids, const EncodedDataset& ds) {
  Bitset extent(ds.size());
  for (ObjectId id : ids) {
    const auto it = std::find_if(ds.objects().begin(), ds.objects().end(),
                                 [id](const EncodedObject& o) { return o.id == id; });
    if (it == ds.objects().end())
      throw Error(ErrorCode::kUnknownObject, "unknown object id " + std::to_string(id));
    extent.set(static_cast<std::size_t>(it - ds.objects().begin()));
  }
  return intent(extent, ds);
}

std::optional<Bitset> closure(const Bitset& items, const EncodedDataset& ds) {
  const Bitset e = ext(items, ds);
  if (e.none()) return std::nullopt;
  return intent(e, ds);
}

std::string interpretation_text(const Bitset& items, const ItemVocabulary& voc) {
  std::string out;
  for (std::size_t v = 0; v < voc.variables().size(); ++v) {
    const VariableSpec& spec = voc.variable(v);
    for (std::size_t slot = 0; slot < spec.slot_count(); ++slot) {
      const IntervalPattern q = decode_pattern(items, voc, v, slot);
      if (q.is_top(spec.grid.k())) continue;
      std::string name = spec.name;
      if (!spec.alphas.empty()) name += "@" + alpha_tag(spec.alphas[slot]);
      if (!out.empty()) out += "; ";
      out += interpret(q, spec.grid).text(name);
    }
  }
  return out.empty() ? "true" : out;
}

}  // namespace ivmine
