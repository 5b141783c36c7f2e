#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "ivmine/error.hpp"
#include "ivmine/fimi.hpp"
#include "ivmine/ingest.hpp"

using namespace ivmine;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("ivmine_fimi_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

EncodedDataset iris_i(std::size_t bins = 5) {
  const auto raw = load_csv(IVMINE_DATA_DIR "/iris.csv");
  const auto grids = equal_width_grids(raw, bins);
  const auto wide = widen(raw, grids, 1);
  return encode_raw(wide, variable_specs(wide, grids, {Language::kI, {}}));
}

void overwrite(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::trunc) << text;
}

}  // namespace

TEST(Manifest, TextRoundTrip) {
  Manifest m;
  m.set("zeta", "1");
  m.set("alpha", "a=b");
  EXPECT_EQ(m.text(), "alpha=a=b\nzeta=1\n");
  const Manifest back = Manifest::parse(m.text());
  EXPECT_EQ(back.entries(), m.entries());
  EXPECT_EQ(back.at("alpha"), "a=b");
  EXPECT_FALSE(back.get("missing"));
  EXPECT_THROW(back.at("missing"), Error);
  EXPECT_THROW(Manifest::parse("novalue\n"), Error);
}

TEST(Files, AtomicWriteLeavesNoTemporaries) {
  TempDir dir;
  const fs::path p = dir.path / "sub" / "out.txt";
  write_file_atomic(p, "one");
  write_file_atomic(p, "two");
  EXPECT_EQ(read_file(p), "two");
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(p.parent_path())) ++files;
  EXPECT_EQ(files, 1u);
  EXPECT_THROW(read_file(dir.path / "absent"), Error);
}

TEST(Fimi, TransactionsRoundTrip) {
  const auto ds = iris_i();
  const std::string text = fimi_text(ds);
  const auto back = parse_fimi(text, ds.vocabulary().size());
  ASSERT_EQ(back.size(), ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) EXPECT_EQ(back[i], ds.objects()[i].items);
  EXPECT_THROW(parse_fimi("1 2 999\n", ds.vocabulary().size()), Error);
  EXPECT_THROW(parse_fimi("1 x\n", ds.vocabulary().size()), Error);
}

TEST(Fimi, MappingLines) {
  const auto ds = iris_i();
  const std::string map = mapping_text(ds.vocabulary());
  EXPECT_EQ(map.substr(0, map.find('\n')), "0\tsepal_length\tcap>s1");
  EXPECT_EQ(std::count(map.begin(), map.end(), '\n'), 32);
}

TEST(Fimi, SaveAndLoad) {
  TempDir dir;
  const auto ds = iris_i(9);
  Manifest m;
  m.set("name", "iris_i8");
  save_encoded(ds, dir.path / "iris_i8", m);
  for (const char* ext : {".fimi", ".map", ".labels.csv", ".manifest"})
    EXPECT_TRUE(fs::exists(dir.path / (std::string("iris_i8") + ext))) << ext;
  const auto loaded = load_encoded(dir.path / "iris_i8");
  EXPECT_EQ(loaded.dataset, ds);
  EXPECT_EQ(loaded.manifest.at("name"), "iris_i8");
  EXPECT_EQ(loaded.manifest.at("objects"), "150");
  EXPECT_EQ(vocabulary_specs(loaded.manifest).size(), 4u);
  const auto labels = read_file(dir.path / "iris_i8.labels.csv");
  EXPECT_EQ(labels.substr(0, labels.find('\n')), "object,label,atoms");
}

TEST(Fimi, LoadDetectsMismatches) {
  TempDir dir;
  const auto ds = iris_i();
  save_encoded(ds, dir.path / "d", {});
  const fs::path map = dir.path / "d.map";
  const std::string good_map = read_file(map);
  overwrite(map, good_map.substr(0, good_map.size() / 2));
  EXPECT_THROW(load_encoded(dir.path / "d"), Error);
  overwrite(map, good_map);

  const fs::path fimi = dir.path / "d.fimi";
  const std::string good_fimi = read_file(fimi);
  overwrite(fimi, good_fimi + "0 1\n");
  EXPECT_THROW(load_encoded(dir.path / "d"), Error);
  overwrite(fimi, good_fimi);

  const fs::path man = dir.path / "d.manifest";
  const std::string good_man = read_file(man);
  overwrite(man, good_man + "items=7\n");
  EXPECT_THROW(load_encoded(dir.path / "d"), Error);
  overwrite(man, good_man);
  EXPECT_NO_THROW(load_encoded(dir.path / "d"));
}

TEST(Concepts, TextRoundTrip) {
  const auto ds = iris_i();
  const auto res = mine_closed(ds, {40, false});
  ASSERT_FALSE(res.concepts.empty());
  const std::string text = concepts_text(res.concepts, ds);
  EXPECT_EQ(text.substr(0, 1), "#");
  EXPECT_EQ(parse_concepts(text, ds), res.concepts);
  EXPECT_THROW(parse_concepts("3\t0 1\t\tx\n", ds), Error);
  EXPECT_THROW(parse_concepts("1\t999\t\tx\n", ds), Error);
}
