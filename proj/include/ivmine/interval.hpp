#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ivmine {

// Pattern languages over a single numeric or interval variable.
//   Num: y > s, y <= s on point values.
//   C:   inclusion constraints, Delta within a half-bounded range.
//   I:   intersection constraints, Delta meets a half-bounded range.
//   IC:  conjunction of I and C constraints.
enum class Language { kNum, kC, kI, kIC };

std::string_view to_string(Language lang);
Language parse_language(std::string_view text);

// Half-open interval ]lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  // Degenerate representation ]y - eps, y] of a point value.
  static Interval point(double y, double eps) { return {y - eps, y}; }

  bool empty() const noexcept { return !(lo < hi); }
  // Closed containment test, so that a clamped bound still counts.
  bool covers(double y) const noexcept { return lo <= y && y <= hi; }
  double width() const noexcept { return hi - lo; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

// Ordered thresholds s_1 < ... < s_k inside the domain ]s_0, s_{k+1}], plus
// the interval resolution eps. The domain bounds may be infinite.
class ThresholdGrid {
 public:
  ThresholdGrid(double lower, std::vector<double> thresholds, double upper, double epsilon);

  std::size_t k() const noexcept { return thresholds_.size(); }
  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }
  double epsilon() const noexcept { return epsilon_; }
  std::span<const double> thresholds() const noexcept { return thresholds_; }

  // s_i for i in 0..k+1.
  double at(std::size_t i) const;

  bool contains(const Interval& iv) const noexcept;
  ThresholdGrid with_domain(double lower, double upper) const;

  friend bool operator==(const ThresholdGrid&, const ThresholdGrid&) = default;

 private:
  double lower_;
  std::vector<double> thresholds_;
  double upper_;
  double epsilon_;
};

// ]y - eps, y] moved inside the domain: ]s_0, y] when y - eps < s_0, and
// ]s_0, s_0 + eps] when y sits on s_0.
Interval point_interval(double y, const ThresholdGrid& grid);

enum class AtomKind { kCapGt, kCapLe, kSubGt, kSubLe, kNumGt, kNumLe };

// "Gt" atoms bound the variable from below and carry index 0..k (0 is the
// virtual always-true atom); "Le" atoms carry index 1..k+1.
constexpr bool is_lower_kind(AtomKind kind) noexcept {
  return kind == AtomKind::kCapGt || kind == AtomKind::kSubGt || kind == AtomKind::kNumGt;
}

struct Atom {
  AtomKind kind = AtomKind::kCapGt;
  std::size_t index = 0;

  bool is_virtual(std::size_t k) const noexcept {
    return is_lower_kind(kind) ? index == 0 : index == k + 1;
  }
  friend bool operator==(const Atom&, const Atom&) = default;
};

std::string_view atom_symbol(AtomKind kind);
std::string atom_text(const Atom& atom);

// One pattern of a language, kept in canonical form (one atom per family).
//   I:   lower = CapGt, upper = CapLe
//   C:   lower = SubGt, upper = SubLe
//   Num: lower = NumGt, upper = NumLe
//   IC:  lower = CapGt, upper = CapLe, extra_lower = SubGt, extra_upper = SubLe
// C and Num patterns whose lower index reaches the upper index are
// unsatisfiable and collapse to the bottom pattern.
struct IntervalPattern {
  Language language = Language::kI;
  Atom lower;
  Atom upper;
  std::optional<Atom> extra_lower;
  std::optional<Atom> extra_upper;
  bool bottom = false;

  static IntervalPattern make(Language lang, std::size_t lower_index, std::size_t upper_index);
  static IntervalPattern make_ic(std::size_t cap_lower, std::size_t cap_upper,
                                 std::size_t sub_lower, std::size_t sub_upper);
  static IntervalPattern top(Language lang, std::size_t k);
  static IntervalPattern bottom_of(Language lang, std::size_t k);

  bool is_top(std::size_t k) const noexcept;

  // All bottoms of a language are equal.
  friend bool operator==(const IntervalPattern& a, const IntervalPattern& b) {
    if (a.language != b.language || a.bottom != b.bottom) return false;
    if (a.bottom) return true;
    return a.lower == b.lower && a.upper == b.upper && a.extra_lower == b.extra_lower &&
           a.extra_upper == b.extra_upper;
  }
};

std::string pattern_text(const IntervalPattern& q);

// Readable range statement equivalent to a pattern.
struct Interpretation {
  enum class Form { kIntersectsRange, kContainsRange, kWithinRange, kConjunction };

  Form form = Form::kIntersectsRange;
  // Range for the atomic forms: ]lo, hi] except ContainsRange, which is the
  // closed range [lo, hi].
  double lo = 0.0;
  double hi = 0.0;
  std::vector<Interpretation> parts;
  // Num patterns constrain a point value rather than an interval.
  bool point_value = false;
  bool never = false;

  bool holds(const Interval& delta) const;
  std::string text(std::string_view variable = "x") const;
};

// Atom semantics on an interval value.
bool atom_holds(const Atom& atom, const Interval& delta, const ThresholdGrid& grid);
bool pattern_holds(const IntervalPattern& q, const Interval& delta, const ThresholdGrid& grid);

// True iff q2 is at least as specific as q1.
bool pattern_leq(const IntervalPattern& q1, const IntervalPattern& q2);
// Greatest lower bound under specificity: the most specific pattern that is
// less specific than both arguments.
IntervalPattern pattern_meet(const IntervalPattern& q1, const IntervalPattern& q2);

// Most specific pattern of `lang` that occurs in delta.
IntervalPattern describe(const Interval& delta, const ThresholdGrid& grid, Language lang);

Interpretation interpret(const IntervalPattern& q, const ThresholdGrid& grid);

// One representative interval per indistinguishability class of the I
// language; (k+1)(k+2)/2 of them.
std::vector<Interval> enumerate_distinguishable(const ThresholdGrid& grid);

}  // namespace ivmine
