#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ivmine/encoding.hpp"
#include "ivmine/mining.hpp"

namespace ivmine {

// Plain key=value file, keys kept sorted.
class Manifest {
 public:
  void set(const std::string& key, std::string value) { entries_[key] = std::move(value); }
  std::optional<std::string> get(const std::string& key) const;
  // Throws kParse when absent.
  const std::string& at(const std::string& key) const;
  const std::map<std::string, std::string>& entries() const noexcept { return entries_; }

  std::string text() const;
  static Manifest parse(const std::string& text);

 private:
  std::map<std::string, std::string> entries_;
};

// Writes `content` to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

// Transactions: ascending item ids, one line per object.
std::string fimi_text(const EncodedDataset& ds);
std::vector<Bitset> parse_fimi(const std::string& text, std::size_t vocabulary_size);
// `item_id<TAB>variable<TAB>atom_text`.
std::string mapping_text(const ItemVocabulary& voc);
// `object,label,atoms` with atoms as `variable:atom;...`.
std::string labels_text(const EncodedDataset& ds);

// Vocabulary description (var.N.* keys) and back.
void describe_vocabulary(Manifest& manifest, const ItemVocabulary& voc);
std::vector<VariableSpec> vocabulary_specs(const Manifest& manifest);

// <base>.fimi, <base>.map, <base>.labels.csv, <base>.manifest. Keys of
// `manifest` are written alongside the vocabulary description.
void save_encoded(const EncodedDataset& ds, const std::filesystem::path& base, Manifest manifest);
struct LoadedDataset {
  EncodedDataset dataset;
  Manifest manifest;
};
// Rebuilds the vocabulary from the manifest and checks the mapping file
// against it.
LoadedDataset load_encoded(const std::filesystem::path& base);

// `support<TAB>extent ids<TAB>intent item ids<TAB>interpretation`, ids
// separated by spaces, preceded by a `#` header line.
std::string concepts_text(const std::vector<Concept>& concepts, const EncodedDataset& ds);
std::vector<Concept> parse_concepts(const std::string& text, const EncodedDataset& ds);

}  // namespace ivmine
