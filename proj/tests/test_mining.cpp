#include <gtest/gtest.h>

#include <random>
#include <set>
#include <vector>

#include "ivmine/error.hpp"
#include "ivmine/mining.hpp"

using namespace ivmine;

namespace {

// Random interval dataset: variables with integer thresholds 1..k over
// ]0,k+1], cells with integer bounds (points for Num).
EncodedDataset random_dataset(std::mt19937_64& rng, Language lang, std::size_t n, std::size_t vars, std::size_t k) {
  std::vector<VariableSpec> specs;
  std::vector<double> t;
  for (std::size_t i = 1; i <= k; ++i) t.push_back(double(i));
  for (std::size_t v = 0; v < vars; ++v)
    specs.push_back({"v" + std::to_string(v), lang, ThresholdGrid(0, t, double(k + 1), 1), {}});
  ItemVocabulary voc(specs);
  std::uniform_int_distribution<int> end(0, static_cast<int>(k + 1));
  std::vector<EncodedObject> objs;
  for (std::size_t o = 0; o < n; ++o) {
    std::vector<CellValue> row;
    for (std::size_t v = 0; v < vars; ++v) {
      int a = end(rng), b = end(rng);
      if (lang == Language::kNum) {
        row.push_back(double(std::max(1, b)));
        continue;
      }
      while (a == b) b = end(rng);
      row.push_back(Interval{double(std::min(a, b)), double(std::max(a, b))});
    }
    objs.push_back({o, encode_object(row, voc), std::nullopt});
  }
  return EncodedDataset(voc, objs);
}

EncodedDataset two_interval_dataset() {
  ItemVocabulary voc({VariableSpec{"x", Language::kI, ThresholdGrid(0, {1, 2, 3, 4}, 5, 1), {}}});
  std::vector<EncodedObject> objs;
  for (const Interval d : {Interval{0, 2}, Interval{1, 4}}) {
    const CellValue v = d;
    objs.push_back({objs.size(), encode_object(std::span<const CellValue>(&v, 1), voc), std::nullopt});
  }
  return EncodedDataset(voc, objs);
}

}  // namespace

TEST(Mining, TwoIntervalsGiveThreeConcepts) {
  const auto ds = two_interval_dataset();
  const auto res = mine_closed(ds, {1, true});
  ASSERT_EQ(res.concepts.size(), 3u);
  EXPECT_EQ(res.concepts[0].support, 2u);
  EXPECT_EQ(interpretation_text(res.concepts[0].intent, ds.vocabulary()), "x intersects ]1, 2]");
  // Two singletons below the pair concept.
  EXPECT_EQ(res.edges.size(), 2u);
  EXPECT_EQ(mine_closed(ds, {2, false}).concepts.size(), 1u);
}

TEST(Mining, SupportValidationAndEmptyDataset) {
  const auto ds = two_interval_dataset();
  EXPECT_THROW(mine_closed(ds, {3, false}), Error);
  EXPECT_THROW(mine_closed(ds, {0, false}), Error);
  const EncodedDataset empty(ds.vocabulary(), {});
  EXPECT_EQ(mine_closed(empty, {1, false}).status, MiningStatus::kEmptyDataset);
}

TEST(Mining, AbsoluteSupport) {
  EXPECT_EQ(absolute_min_support(0.2, 150), 30u);
  EXPECT_EQ(absolute_min_support(0.01, 10), 1u);
  EXPECT_EQ(absolute_min_support(1.0, 7), 7u);
  EXPECT_THROW(absolute_min_support(0.0, 7), Error);
}

TEST(Mining, BruteForceGuard) {
  std::mt19937_64 rng(1);
  const auto ds = random_dataset(rng, Language::kIC, 20, 2, 4);  // 20 objects, 32 items
  EXPECT_THROW(brute_force_closed(ds, {1, false}), Error);
}

class OracleEquivalence : public ::testing::TestWithParam<Language> {};

TEST_P(OracleEquivalence, MatchesBruteForce) {
  std::mt19937_64 rng(17 + static_cast<int>(GetParam()));
  std::uniform_int_distribution<std::size_t> n_dist(1, 8), v_dist(1, 2), k_dist(1, 3);
  for (int trial = 0; trial < 60; ++trial) {
    const auto ds = random_dataset(rng, GetParam(), n_dist(rng), v_dist(rng), k_dist(rng));
    for (std::size_t s = 1; s <= std::min<std::size_t>(2, ds.size()); ++s) {
      const auto fast = mine_closed(ds, {s, true});
      const auto slow = brute_force_closed(ds, {s, true});
      ASSERT_EQ(fast.concepts, slow.concepts) << "trial " << trial << " min support " << s;
      EXPECT_EQ(fast.edges, slow.edges);
    }
  }
}

// Wider datasets exercise the itemset-enumeration branch of the oracle.
TEST_P(OracleEquivalence, MatchesItemsetEnumeration) {
  std::mt19937_64 rng(99 + static_cast<int>(GetParam()));
  const std::size_t k = GetParam() == Language::kIC ? 1 : 2;
  for (int trial = 0; trial < 5; ++trial) {
    const auto ds = random_dataset(rng, GetParam(), 30, 2, k);
    ASSERT_LE(ds.vocabulary().size(), 24u);
    EXPECT_EQ(mine_closed(ds, {3, false}).concepts, brute_force_closed(ds, {3, false}).concepts);
  }
}

TEST_P(OracleEquivalence, ConceptsAreClosedAndDistinct) {
  std::mt19937_64 rng(5);
  const auto ds = random_dataset(rng, GetParam(), 40, 2, 3);
  const auto res = mine_closed(ds, {2, false});
  std::set<std::vector<std::size_t>> seen;
  for (const auto& c : res.concepts) {
    EXPECT_EQ(ext(c.intent, ds), c.extent);
    EXPECT_EQ(intent(c.extent, ds), c.intent);
    EXPECT_GE(c.support, 2u);
    EXPECT_TRUE(seen.insert(c.intent.indices()).second);
    // Intents are valid pattern representations.
    for (std::size_t v = 0; v < ds.vocabulary().variables().size(); ++v) EXPECT_NO_THROW(decode_pattern(c.intent, ds.vocabulary(), v));
  }
  for (std::size_t i = 1; i < res.concepts.size(); ++i)
    EXPECT_GE(res.concepts[i - 1].support, res.concepts[i].support);
}

INSTANTIATE_TEST_SUITE_P(AllLanguages, OracleEquivalence,
                         ::testing::Values(Language::kNum, Language::kC, Language::kI, Language::kIC),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(Closure, Axioms) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Language lang = static_cast<Language>(trial % 4);
    const auto ds = random_dataset(rng, lang, 1 + trial % 9, 1 + trial % 2, 1 + trial % 3);
    const std::size_t m = ds.vocabulary().size();
    std::bernoulli_distribution coin(0.3);
    Bitset x(m), y(m);
    for (std::size_t i = 0; i < m; ++i) {
      if (coin(rng)) x.set(i);
      if (coin(rng)) y.set(i);
    }
    y |= x;  // x is a subset of y
    const auto cx = closure(x, ds);
    const auto cy = closure(y, ds);
    if (cx) {
      EXPECT_TRUE(x.is_subset_of(*cx));
      EXPECT_EQ(closure(*cx, ds), cx);
    }
    if (cy) {
      ASSERT_TRUE(cx);
      EXPECT_TRUE(cx->is_subset_of(*cy));
    }
  }
}

TEST(Lattice, EdgesAreCoveringPairs) {
  std::mt19937_64 rng(8);
  const auto ds = random_dataset(rng, Language::kI, 8, 2, 2);
  const auto res = mine_closed(ds, {1, true});
  const auto& cs = res.concepts;
  for (const auto& [p, c] : res.edges) {
    EXPECT_TRUE(cs[p].intent.is_subset_of(cs[c].intent));
    EXPECT_FALSE(cs[p].intent == cs[c].intent);
    for (std::size_t r = 0; r < cs.size(); ++r) {
      if (r == p || r == c) continue;
      EXPECT_FALSE(cs[p].intent.is_subset_of(cs[r].intent) && cs[r].intent.is_subset_of(cs[c].intent));
    }
  }
}
