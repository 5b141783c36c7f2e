#include "ivmine/fimi.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <system_error>

#include "ivmine/error.hpp"
#include "ivmine/ingest.hpp"

namespace ivmine {
namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) return out;
    start = pos + 1;
  }
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(line);
  }
  return out;
}

std::size_t parse_index(const std::string& s, const std::string& what) {
  std::size_t v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size())
    throw Error(ErrorCode::kParse, "bad " + what + " '" + s + "'");
  return v;
}

double parse_real(const std::string& s, const std::string& what) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size())
    throw Error(ErrorCode::kParse, "bad " + what + " '" + s + "'");
  return v;
}

std::vector<std::size_t> parse_ids(const std::string& s, const std::string& what) {
  std::vector<std::size_t> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(parse_index(tok, what));
  return out;
}

std::string join_ids(const Bitset& b) {
  std::string out;
  b.for_each([&](std::size_t i) {
    if (!out.empty()) out += ' ';
    out += std::to_string(i);
  });
  return out;
}

std::string join_reals(std::span<const double> xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ";" : "") + format_number(xs[i]);
  return out;
}

std::vector<double> parse_reals(const std::string& s, const std::string& what) {
  std::vector<double> out;
  if (s.empty()) return out;
  for (const auto& part : split(s, ';')) out.push_back(parse_real(part, what));
  return out;
}

}  // namespace

std::optional<std::string> Manifest::get(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

const std::string& Manifest::at(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw Error(ErrorCode::kParse, "manifest lacks '" + key + "'");
  return it->second;
}

std::string Manifest::text() const {
  std::string out;
  for (const auto& [k, v] : entries_) out += k + "=" + v + "\n";
  return out;
}

Manifest Manifest::parse(const std::string& text) {
  Manifest m;
  std::size_t n = 0;
  for (const auto& line : lines_of(text)) {
    ++n;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || eq == 0)
      throw Error(ErrorCode::kParse, "manifest line " + std::to_string(n) + " is not key=value");
    m.set(line.substr(0, eq), line.substr(eq + 1));
  }
  return m;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  fs::path tmp = path;
  tmp += ".tmp" + std::to_string(std::random_device{}());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::kIo, "cannot replace " + path.string());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string fimi_text(const EncodedDataset& ds) {
  std::string out;
  for (const auto& o : ds.objects()) out += join_ids(o.items) + "\n";
  return out;
}

std::vector<Bitset> parse_fimi(const std::string& text, std::size_t vocabulary_size) {
  std::vector<Bitset> out;
  std::size_t n = 0;
  for (const auto& line : lines_of(text)) {
    ++n;
    Bitset items(vocabulary_size);
    for (std::size_t id : parse_ids(line, "item id on transaction line " + std::to_string(n))) {
      if (id >= vocabulary_size)
        throw Error(ErrorCode::kParse, "item " + std::to_string(id) + " outside the vocabulary on line " +
                                           std::to_string(n));
      items.set(id);
    }
    out.push_back(std::move(items));
  }
  return out;
}

std::string mapping_text(const ItemVocabulary& voc) {
  std::string out;
  for (ItemId id = 0; id < voc.size(); ++id)
    out += std::to_string(id) + "\t" + voc.variable(voc.item(id).variable).name + "\t" + voc.item_text(id) + "\n";
  return out;
}

std::string labels_text(const EncodedDataset& ds) {
  const ItemVocabulary& voc = ds.vocabulary();
  std::string out = "object,label,atoms\n";
  for (const auto& o : ds.objects()) {
    out += std::to_string(o.id) + "," + o.label.value_or("") + ",";
    bool first = true;
    o.items.for_each([&](std::size_t id) {
      out += (first ? "" : ";") + voc.variable(voc.item(id).variable).name + ":" + voc.item_text(id);
      first = false;
    });
    out += "\n";
  }
  return out;
}

void describe_vocabulary(Manifest& m, const ItemVocabulary& voc) {
  m.set("variables", std::to_string(voc.variables().size()));
  m.set("items", std::to_string(voc.size()));
  for (std::size_t v = 0; v < voc.variables().size(); ++v) {
    const VariableSpec& spec = voc.variable(v);
    const std::string p = "var." + std::to_string(v) + ".";
    m.set(p + "name", spec.name);
    m.set(p + "language", std::string(to_string(spec.language)));
    m.set(p + "epsilon", format_number(spec.grid.epsilon()));
    std::vector<double> grid{spec.grid.lower()};
    grid.insert(grid.end(), spec.grid.thresholds().begin(), spec.grid.thresholds().end());
    grid.push_back(spec.grid.upper());
    m.set(p + "grid", join_reals(grid));
    m.set(p + "alphas", join_reals(spec.alphas));
  }
}

std::vector<VariableSpec> vocabulary_specs(const Manifest& m) {
  const std::size_t n = parse_index(m.at("variables"), "variable count");
  std::vector<VariableSpec> specs;
  for (std::size_t v = 0; v < n; ++v) {
    const std::string p = "var." + std::to_string(v) + ".";
    const auto grid = parse_reals(m.at(p + "grid"), "grid value");
    if (grid.size() < 2) throw Error(ErrorCode::kParse, "grid of variable " + std::to_string(v) + " is too short");
    VariableSpec spec;
    spec.name = m.at(p + "name");
    spec.language = parse_language(m.at(p + "language"));
    spec.grid = ThresholdGrid(grid.front(), std::vector<double>(grid.begin() + 1, grid.end() - 1), grid.back(),
                              parse_real(m.at(p + "epsilon"), "epsilon"));
    spec.alphas = parse_reals(m.get(p + "alphas").value_or(""), "alpha");
    specs.push_back(std::move(spec));
  }
  return specs;
}

void save_encoded(const EncodedDataset& ds, const std::filesystem::path& base, Manifest manifest) {
  describe_vocabulary(manifest, ds.vocabulary());
  manifest.set("objects", std::to_string(ds.size()));
  manifest.set("labelled", ds.has_labels() ? "1" : "0");
  auto with = [&](const char* ext) {
    std::filesystem::path p = base;
    p += ext;
    return p;
  };
  write_file_atomic(with(".fimi"), fimi_text(ds));
  write_file_atomic(with(".map"), mapping_text(ds.vocabulary()));
  write_file_atomic(with(".labels.csv"), labels_text(ds));
  write_file_atomic(with(".manifest"), manifest.text());
}

LoadedDataset load_encoded(const std::filesystem::path& base) {
  auto with = [&](const char* ext) {
    std::filesystem::path p = base;
    p += ext;
    return p;
  };
  Manifest manifest = Manifest::parse(read_file(with(".manifest")));
  ItemVocabulary voc(vocabulary_specs(manifest));
  if (parse_index(manifest.at("items"), "item count") != voc.size())
    throw Error(ErrorCode::kParse, "manifest item count does not match its grids");
  if (read_file(with(".map")) != mapping_text(voc))
    throw Error(ErrorCode::kParse, "mapping file disagrees with the manifest vocabulary");

  auto transactions = parse_fimi(read_file(with(".fimi")), voc.size());
  const std::size_t n = parse_index(manifest.at("objects"), "object count");
  if (transactions.size() != n)
    throw Error(ErrorCode::kParse, "expected " + std::to_string(n) + " transactions, found " +
                                       std::to_string(transactions.size()));

  const bool labelled = manifest.get("labelled").value_or("0") == "1";
  const auto label_lines = lines_of(read_file(with(".labels.csv")));
  if (label_lines.size() != n + 1) throw Error(ErrorCode::kParse, "labels file has the wrong number of rows");
  std::vector<EncodedObject> objects;
  for (std::size_t r = 0; r < n; ++r) {
    const std::string& line = label_lines[r + 1];
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string::npos) throw Error(ErrorCode::kParse, "bad labels row " + std::to_string(r + 1));
    EncodedObject o;
    o.id = parse_index(line.substr(0, c1), "object id");
    if (labelled) o.label = line.substr(c1 + 1, c2 - c1 - 1);
    o.items = std::move(transactions[r]);
    objects.push_back(std::move(o));
  }
  return {EncodedDataset(std::move(voc), std::move(objects)), std::move(manifest)};
}

std::string concepts_text(const std::vector<Concept>& concepts, const EncodedDataset& ds) {
  std::string out = "#support\textent\tintent\tinterpretation\n";
  for (const auto& c : concepts) {
    std::string extent;
    c.extent.for_each([&](std::size_t pos) {
      if (!extent.empty()) extent += ' ';
      extent += std::to_string(ds.objects()[pos].id);
    });
    out += std::to_string(c.support) + "\t" + extent + "\t" + join_ids(c.intent) + "\t" +
           interpretation_text(c.intent, ds.vocabulary()) + "\n";
  }
  return out;
}

std::vector<Concept> parse_concepts(const std::string& text, const EncodedDataset& ds) {
  std::map<std::size_t, std::size_t> position;
  for (std::size_t i = 0; i < ds.size(); ++i) position[ds.objects()[i].id] = i;
  std::vector<Concept> out;
  std::size_t n = 0;
  for (const auto& line : lines_of(text)) {
    ++n;
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split(line, '\t');
    if (fields.size() < 3) throw Error(ErrorCode::kParse, "concept line " + std::to_string(n) + " has too few fields");
    Concept c{Bitset(ds.vocabulary().size()), Bitset(ds.size()), parse_index(fields[0], "support")};
    for (std::size_t id : parse_ids(fields[1], "object id")) {
      const auto it = position.find(id);
      if (it == position.end())
        throw Error(ErrorCode::kUnknownObject, "concept line " + std::to_string(n) + " names unknown object " +
                                                   std::to_string(id));
      c.extent.set(it->second);
    }
    for (std::size_t id : parse_ids(fields[2], "item id")) {
      if (id >= ds.vocabulary().size())
        throw Error(ErrorCode::kParse, "concept line " + std::to_string(n) + " names unknown item " +
                                           std::to_string(id));
      c.intent.set(id);
    }
    if (c.extent.count() != c.support)
      throw Error(ErrorCode::kParse, "concept line " + std::to_string(n) + ": support disagrees with extent");
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace ivmine
