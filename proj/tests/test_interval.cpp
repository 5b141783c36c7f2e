#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <vector>

#include "ivmine/error.hpp"
#include "ivmine/interval.hpp"

using namespace ivmine;

namespace {

// Domain ]0,5], thresholds 1..4, resolution 1.
ThresholdGrid table_grid() { return ThresholdGrid(0.0, {1, 2, 3, 4}, 5.0, 1.0); }

ThresholdGrid integer_grid(std::size_t k) {
  std::vector<double> t;
  for (std::size_t i = 1; i <= k; ++i) t.push_back(static_cast<double>(i));
  return ThresholdGrid(0.0, t, static_cast<double>(k + 1), 1.0);
}

// Every pattern of a single-family-pair language (no bottom duplicates).
std::vector<IntervalPattern> all_patterns(Language lang, std::size_t k) {
  std::vector<IntervalPattern> out;
  bool bottom_seen = false;
  auto push = [&](IntervalPattern q) {
    if (q.bottom) {
      if (bottom_seen) return;
      bottom_seen = true;
    }
    out.push_back(q);
  };
  if (lang == Language::kIC) {
    for (std::size_t a = 0; a <= k; ++a)
      for (std::size_t b = 1; b <= k + 1; ++b)
        for (std::size_t c = 0; c <= k; ++c)
          for (std::size_t d = 1; d <= k + 1; ++d) push(IntervalPattern::make_ic(a, b, c, d));
    return out;
  }
  for (std::size_t i = 0; i <= k; ++i)
    for (std::size_t j = 1; j <= k + 1; ++j) push(IntervalPattern::make(lang, i, j));
  return out;
}

// Integer-bounded intervals ]a, b] of the domain.
std::vector<Interval> lattice_intervals(const ThresholdGrid& g) {
  std::vector<Interval> out;
  const int lo = static_cast<int>(g.lower());
  const int hi = static_cast<int>(g.upper());
  for (int a = lo; a < hi; ++a)
    for (int b = a + 1; b <= hi; ++b) out.push_back({double(a), double(b)});
  return out;
}

std::vector<Interval> point_intervals(const ThresholdGrid& g) {
  std::vector<Interval> out;
  for (int y = static_cast<int>(g.lower()) + 1; y <= static_cast<int>(g.upper()); ++y)
    out.push_back(Interval::point(y, g.epsilon()));
  return out;
}

}  // namespace

TEST(WorkedExample, DescribeInI) {
  const auto g = table_grid();
  const Interval a{0, 2}, b{1, 4};
  EXPECT_EQ(describe(a, g, Language::kI), IntervalPattern::make(Language::kI, 1, 1));
  EXPECT_EQ(describe(b, g, Language::kI), IntervalPattern::make(Language::kI, 3, 2));
  EXPECT_EQ(interpret(describe(a, g, Language::kI), g).text("x"), "x contains [1, 2]");
  EXPECT_EQ(interpret(describe(b, g, Language::kI), g).text("x"), "x contains [2, 4]");
}

TEST(WorkedExample, MeetInI) {
  const auto g = table_grid();
  const auto q = pattern_meet(describe({0, 2}, g, Language::kI), describe({1, 4}, g, Language::kI));
  EXPECT_EQ(q, IntervalPattern::make(Language::kI, 1, 2));
  EXPECT_EQ(interpret(q, g).text("x"), "x intersects ]1, 2]");
}

TEST(WorkedExample, DescribeAndMeetInC) {
  const auto g = table_grid();
  const auto qa = describe({0, 2}, g, Language::kC);
  const auto qb = describe({1, 4}, g, Language::kC);
  EXPECT_EQ(qa, IntervalPattern::make(Language::kC, 0, 2));
  EXPECT_EQ(qb, IntervalPattern::make(Language::kC, 1, 4));
  const auto q = pattern_meet(qa, qb);
  EXPECT_EQ(q, IntervalPattern::make(Language::kC, 0, 4));
  EXPECT_EQ(interpret(q, g).text("x"), "x within ]0, 4]");
}

TEST(Describe, NegativeThresholdsInI) {
  const double inf = std::numeric_limits<double>::infinity();
  const ThresholdGrid g(-inf, {-0.5, 2.5, 4.5, 6.5}, inf, 1.0);
  EXPECT_EQ(describe({0.7184, 3.2816}, g, Language::kI), IntervalPattern::make(Language::kI, 2, 2));
  EXPECT_EQ(describe({0.0, 4.0}, g, Language::kI), IntervalPattern::make(Language::kI, 2, 2));
  EXPECT_EQ(describe({-1.0, 1.0}, g, Language::kI), IntervalPattern::make(Language::kI, 1, 1));
}

TEST(Describe, NumOnPoints) {
  const auto g = table_grid();
  EXPECT_EQ(describe(Interval::point(3, 1), g, Language::kNum), IntervalPattern::make(Language::kNum, 2, 3));
  EXPECT_EQ(describe(Interval::point(5, 1), g, Language::kNum), IntervalPattern::make(Language::kNum, 4, 5));
  EXPECT_EQ(interpret(IntervalPattern::make(Language::kNum, 2, 3), g).text("y"), "y in ]2, 3]");
}

TEST(Describe, Errors) {
  const auto g = table_grid();
  try {
    describe({2, 2}, g, Language::kI);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyInterval);
  }
  try {
    describe({1, 3}, g, Language::kNum);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPointExpected);
  }
  EXPECT_THROW(describe({-1, 3}, g, Language::kC), Error);
  EXPECT_THROW(describe({1, 7}, g, Language::kI), Error);
}

TEST(Grid, Validation) {
  EXPECT_THROW(ThresholdGrid(0, {2, 1}, 5, 1), Error);
  EXPECT_THROW(ThresholdGrid(0, {1, 5}, 5, 1), Error);
  EXPECT_THROW(ThresholdGrid(0, {1}, 5, 0), Error);
  EXPECT_NO_THROW(ThresholdGrid(0, {}, 5, 1));
  const auto g = table_grid();
  EXPECT_EQ(g.at(0), 0);
  EXPECT_EQ(g.at(5), 5);
  EXPECT_THROW(g.at(6), Error);
}

TEST(PointInterval, StaysInsideDomain) {
  const auto g = table_grid();
  EXPECT_EQ(point_interval(3, g), (Interval{2, 3}));
  EXPECT_EQ(point_interval(0, g), (Interval{0, 1}));
  EXPECT_EQ(point_interval(0.5, g), (Interval{0, 0.5}));
}

TEST(Atoms, SemanticsAndRange) {
  const auto g = table_grid();
  const Interval d{1, 3};
  EXPECT_TRUE(atom_holds({AtomKind::kCapGt, 2}, d, g));
  EXPECT_FALSE(atom_holds({AtomKind::kCapGt, 3}, d, g));
  EXPECT_TRUE(atom_holds({AtomKind::kCapLe, 2}, d, g));
  EXPECT_FALSE(atom_holds({AtomKind::kCapLe, 1}, d, g));
  EXPECT_TRUE(atom_holds({AtomKind::kSubGt, 1}, d, g));
  EXPECT_FALSE(atom_holds({AtomKind::kSubGt, 2}, d, g));
  EXPECT_TRUE(atom_holds({AtomKind::kSubLe, 3}, d, g));
  EXPECT_FALSE(atom_holds({AtomKind::kSubLe, 2}, d, g));
  EXPECT_TRUE(atom_holds({AtomKind::kCapGt, 0}, d, g));
  EXPECT_TRUE(atom_holds({AtomKind::kSubLe, 5}, d, g));
  EXPECT_THROW(atom_holds({AtomKind::kCapGt, 6}, d, g), Error);
  EXPECT_EQ(atom_text({AtomKind::kCapLe, 2}), "cap<=s2");
}

TEST(Interpret, IcConjunction) {
  const ThresholdGrid g(0, {1, 2}, 3, 1);
  const auto q = IntervalPattern::make_ic(2, 2, 1, 3);
  EXPECT_EQ(interpret(q, g).text("x"), "x contains [2, 3] and x within ]1, 3]");
  EXPECT_EQ(interpret(IntervalPattern::make_ic(1, 2, 0, 3), g).text("x"), "x intersects ]1, 2]");
  EXPECT_EQ(interpret(IntervalPattern::bottom_of(Language::kC, 2), g).text("x"), "false");
}

TEST(Patterns, BottomsCollapse) {
  EXPECT_TRUE(IntervalPattern::make(Language::kC, 2, 2).bottom);
  EXPECT_TRUE(IntervalPattern::make(Language::kNum, 3, 1).bottom);
  EXPECT_FALSE(IntervalPattern::make(Language::kI, 3, 1).bottom);
  EXPECT_EQ(IntervalPattern::make(Language::kC, 2, 2), IntervalPattern::make(Language::kC, 4, 1));
  EXPECT_THROW(pattern_leq(IntervalPattern::make(Language::kC, 0, 2), IntervalPattern::make(Language::kI, 0, 2)),
               Error);
}

TEST(Distinguishable, CountMatchesFormula) {
  for (std::size_t k = 0; k <= 6; ++k)
    EXPECT_EQ(enumerate_distinguishable(integer_grid(k)).size(), (k + 1) * (k + 2) / 2) << "k=" << k;
}

TEST(Distinguishable, BruteForceSignatureClasses) {
  for (std::size_t k = 0; k <= 6; ++k) {
    const auto g = integer_grid(k);
    std::set<std::vector<bool>> signatures;
    const int steps = 4 * static_cast<int>(k + 1);
    for (int a = 0; a < steps; ++a)
      for (int b = a + 1; b <= steps; ++b) {
        const Interval d{a / 4.0, b / 4.0};
        std::vector<bool> sig;
        for (std::size_t i = 1; i <= k; ++i) {
          sig.push_back(atom_holds({AtomKind::kCapGt, i}, d, g));
          sig.push_back(atom_holds({AtomKind::kCapLe, i}, d, g));
        }
        signatures.insert(sig);
      }
    EXPECT_EQ(signatures.size(), (k + 1) * (k + 2) / 2) << "k=" << k;

    // Representatives fall in pairwise different classes.
    std::set<IntervalPattern, bool (*)(const IntervalPattern&, const IntervalPattern&)> seen(
        [](const IntervalPattern& x, const IntervalPattern& y) {
          return std::pair(x.lower.index, x.upper.index) < std::pair(y.lower.index, y.upper.index);
        });
    for (const auto& d : enumerate_distinguishable(g)) seen.insert(describe(d, g, Language::kI));
    EXPECT_EQ(seen.size(), (k + 1) * (k + 2) / 2);
  }
}

class LanguageProperties : public ::testing::TestWithParam<Language> {};

// describe(d) holds on d and is more specific than every pattern holding on d.
TEST_P(LanguageProperties, DescribeIsMostSpecific) {
  const Language lang = GetParam();
  for (std::size_t k = 0; k <= 4; ++k) {
    const auto g = integer_grid(k);
    const auto patterns = all_patterns(lang, k);
    const auto deltas = lang == Language::kNum ? point_intervals(g) : lattice_intervals(g);
    for (const auto& d : deltas) {
      const auto q = describe(d, g, lang);
      ASSERT_TRUE(pattern_holds(q, d, g));
      for (const auto& p : patterns)
        if (pattern_holds(p, d, g)) EXPECT_TRUE(pattern_leq(p, q)) << pattern_text(p) << " vs " << pattern_text(q);
    }
  }
}

// q1 <= q2 iff every interval satisfying q2 satisfies q1 (on satisfiable patterns).
TEST_P(LanguageProperties, SpecificityMatchesExtents) {
  const Language lang = GetParam();
  const std::size_t k = 3;
  const auto g = integer_grid(k);
  const auto deltas = lang == Language::kNum ? point_intervals(g) : lattice_intervals(g);
  const auto patterns = all_patterns(lang, k);
  for (const auto& q1 : patterns)
    for (const auto& q2 : patterns) {
      if (!pattern_leq(q1, q2)) continue;
      for (const auto& d : deltas)
        if (pattern_holds(q2, d, g)) EXPECT_TRUE(pattern_holds(q1, d, g));
    }
}

// The meet is below both arguments and above every common lower bound.
TEST_P(LanguageProperties, MeetIsGreatestLowerBound) {
  const Language lang = GetParam();
  const std::size_t k = lang == Language::kIC ? 2 : 3;
  const auto patterns = all_patterns(lang, k);
  for (const auto& a : patterns)
    for (const auto& b : patterns) {
      const auto m = pattern_meet(a, b);
      ASSERT_TRUE(pattern_leq(m, a));
      ASSERT_TRUE(pattern_leq(m, b));
      EXPECT_EQ(pattern_meet(b, a), m);
      for (const auto& r : patterns)
        if (pattern_leq(r, a) && pattern_leq(r, b)) EXPECT_TRUE(pattern_leq(r, m));
    }
}

// The range statement accepts exactly the intervals the atoms accept.
TEST_P(LanguageProperties, InterpretationAgreesWithAtoms) {
  const Language lang = GetParam();
  const std::size_t k = 3;
  const auto g = integer_grid(k);
  const auto deltas = lang == Language::kNum ? point_intervals(g) : lattice_intervals(g);
  for (const auto& q : all_patterns(lang, k)) {
    const auto it = interpret(q, g);
    for (const auto& d : deltas) EXPECT_EQ(it.holds(d), pattern_holds(q, d, g)) << pattern_text(q);
  }
}

INSTANTIATE_TEST_SUITE_P(AllLanguages, LanguageProperties,
                         ::testing::Values(Language::kNum, Language::kC, Language::kI, Language::kIC),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(Describe, RandomRealIntervalsHoldTheirDescription) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  const auto g = table_grid();
  for (int n = 0; n < 2000; ++n) {
    double a = u(rng), b = u(rng);
    if (a == b) continue;
    const Interval d{std::min(a, b), std::max(a, b)};
    for (Language lang : {Language::kC, Language::kI, Language::kIC}) {
      const auto q = describe(d, g, lang);
      EXPECT_TRUE(pattern_holds(q, d, g));
    }
    const auto qi = describe(d, g, Language::kI);
    EXPECT_LE(qi.upper.index, qi.lower.index + 1);
  }
}

TEST(Language, Parse) {
  EXPECT_EQ(parse_language("ic"), Language::kIC);
  EXPECT_EQ(to_string(Language::kNum), "num");
  EXPECT_THROW(parse_language("x"), Error);
}
