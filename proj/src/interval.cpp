#include "ivmine/interval.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ivmine/error.hpp"

namespace ivmine {
namespace {

double tolerance(double bound) {
  return std::isfinite(bound) ? 1e-9 * std::max(1.0, std::abs(bound)) : 0.0;
}

std::string number(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

std::pair<AtomKind, AtomKind> families_of(Language lang) {
  switch (lang) {
    case Language::kNum: return {AtomKind::kNumGt, AtomKind::kNumLe};
    case Language::kC: return {AtomKind::kSubGt, AtomKind::kSubLe};
    case Language::kI:
    case Language::kIC: return {AtomKind::kCapGt, AtomKind::kCapLe};
  }
  return {AtomKind::kCapGt, AtomKind::kCapLe};
}

bool has_bottom(Language lang) { return lang == Language::kC || lang == Language::kNum; }

void require_same_language(const IntervalPattern& a, const IntervalPattern& b) {
  if (a.language != b.language)
    throw Error(ErrorCode::kLanguageMismatch, "patterns from different languages: " +
                                                  std::string(to_string(a.language)) + " vs " +
                                                  std::string(to_string(b.language)));
}

void check_index(const Atom& atom, std::size_t k) {
  const bool ok = is_lower_kind(atom.kind) ? atom.index <= k
                                           : (atom.index >= 1 && atom.index <= k + 1);
  if (!ok)
    throw Error(ErrorCode::kInvalidAtom,
                "atom " + atom_text(atom) + " outside 0.." + std::to_string(k + 1));
}

}  // namespace

std::string_view to_string(Language lang) {
  switch (lang) {
    case Language::kNum: return "num";
    case Language::kC: return "c";
    case Language::kI: return "i";
    case Language::kIC: return "ic";
  }
  return "?";
}

Language parse_language(std::string_view text) {
  if (text == "num") return Language::kNum;
  if (text == "c") return Language::kC;
  if (text == "i") return Language::kI;
  if (text == "ic") return Language::kIC;
  throw Error(ErrorCode::kInvalidArgument, "unknown language '" + std::string(text) + "'");
}

ThresholdGrid::ThresholdGrid(double lower, std::vector<double> thresholds, double upper,
                             double epsilon)
    : lower_(lower), thresholds_(std::move(thresholds)), upper_(upper), epsilon_(epsilon) {
  if (!(epsilon_ > 0.0) || !std::isfinite(epsilon_))
    throw Error(ErrorCode::kInvalidArgument, "grid resolution must be positive");
  double prev = lower_;
  for (double s : thresholds_) {
    if (!(s > prev) || !std::isfinite(s))
      throw Error(ErrorCode::kInvalidArgument, "thresholds must increase strictly inside the domain");
    prev = s;
  }
  if (!(upper_ > prev)) throw Error(ErrorCode::kInvalidArgument, "domain upper bound too small");
}

double ThresholdGrid::at(std::size_t i) const {
  if (i == 0) return lower_;
  if (i <= k()) return thresholds_[i - 1];
  if (i == k() + 1) return upper_;
  throw Error(ErrorCode::kInvalidAtom, "threshold index " + std::to_string(i) + " out of range");
}

bool ThresholdGrid::contains(const Interval& iv) const noexcept {
  return iv.lo >= lower_ - tolerance(lower_) && iv.hi <= upper_ + tolerance(upper_);
}

ThresholdGrid ThresholdGrid::with_domain(double lower, double upper) const {
  return ThresholdGrid(lower, thresholds_, upper, epsilon_);
}

Interval point_interval(double y, const ThresholdGrid& grid) {
  Interval iv = Interval::point(y, grid.epsilon());
  if (iv.lo < grid.lower()) {
    iv.lo = grid.lower();
    if (!(iv.hi > iv.lo)) iv.hi = iv.lo + grid.epsilon();
  }
  return iv;
}

std::string_view atom_symbol(AtomKind kind) {
  switch (kind) {
    case AtomKind::kCapGt: return "cap>";
    case AtomKind::kCapLe: return "cap<=";
    case AtomKind::kSubGt: return "sub>";
    case AtomKind::kSubLe: return "sub<=";
    case AtomKind::kNumGt: return "num>";
    case AtomKind::kNumLe: return "num<=";
  }
  return "?";
}

std::string atom_text(const Atom& atom) {
  return std::string(atom_symbol(atom.kind)) + "s" + std::to_string(atom.index);
}

IntervalPattern IntervalPattern::make(Language lang, std::size_t lower_index,
                                      std::size_t upper_index) {
  if (lang == Language::kIC)
    throw Error(ErrorCode::kInvalidArgument, "IC patterns need four atoms; use make_ic");
  const auto [gt, le] = families_of(lang);
  IntervalPattern q;
  q.language = lang;
  q.lower = {gt, lower_index};
  q.upper = {le, upper_index};
  q.bottom = has_bottom(lang) && lower_index >= upper_index;
  return q;
}

IntervalPattern IntervalPattern::make_ic(std::size_t cap_lower, std::size_t cap_upper,
                                         std::size_t sub_lower, std::size_t sub_upper) {
  IntervalPattern q;
  q.language = Language::kIC;
  q.lower = {AtomKind::kCapGt, cap_lower};
  q.upper = {AtomKind::kCapLe, cap_upper};
  q.extra_lower = Atom{AtomKind::kSubGt, sub_lower};
  q.extra_upper = Atom{AtomKind::kSubLe, sub_upper};
  return q;
}

IntervalPattern IntervalPattern::top(Language lang, std::size_t k) {
  if (lang == Language::kIC) return make_ic(0, k + 1, 0, k + 1);
  return make(lang, 0, k + 1);
}

IntervalPattern IntervalPattern::bottom_of(Language lang, std::size_t k) {
  if (!has_bottom(lang))
    throw Error(ErrorCode::kInvalidArgument,
                "language " + std::string(to_string(lang)) + " has no bottom pattern");
  IntervalPattern q = make(lang, k, 1);
  q.bottom = true;
  return q;
}

bool IntervalPattern::is_top(std::size_t k) const noexcept {
  if (bottom) return false;
  bool top = lower.is_virtual(k) && upper.is_virtual(k);
  if (extra_lower) top = top && extra_lower->is_virtual(k);
  if (extra_upper) top = top && extra_upper->is_virtual(k);
  return top;
}

std::string pattern_text(const IntervalPattern& q) {
  if (q.bottom) return "bottom";
  std::string out = "(" + atom_text(q.lower) + ", " + atom_text(q.upper);
  if (q.extra_lower) out += ", " + atom_text(*q.extra_lower);
  if (q.extra_upper) out += ", " + atom_text(*q.extra_upper);
  return out + ")";
}

bool atom_holds(const Atom& atom, const Interval& delta, const ThresholdGrid& grid) {
  check_index(atom, grid.k());
  if (atom.is_virtual(grid.k())) return true;
  const double s = grid.at(atom.index);
  switch (atom.kind) {
    case AtomKind::kCapGt: return delta.hi > s;
    case AtomKind::kCapLe: return delta.lo < s;
    case AtomKind::kSubGt: return delta.lo >= s;
    case AtomKind::kSubLe: return delta.hi <= s;
    case AtomKind::kNumGt: return delta.hi > s;
    case AtomKind::kNumLe: return delta.hi <= s;
  }
  return false;
}

bool pattern_holds(const IntervalPattern& q, const Interval& delta, const ThresholdGrid& grid) {
  if (q.bottom) return false;
  bool ok = atom_holds(q.lower, delta, grid) && atom_holds(q.upper, delta, grid);
  if (ok && q.extra_lower) ok = atom_holds(*q.extra_lower, delta, grid);
  if (ok && q.extra_upper) ok = atom_holds(*q.extra_upper, delta, grid);
  return ok;
}

bool pattern_leq(const IntervalPattern& q1, const IntervalPattern& q2) {
  require_same_language(q1, q2);
  if (q2.bottom) return true;
  if (q1.bottom) return false;
  bool leq = q2.lower.index >= q1.lower.index && q2.upper.index <= q1.upper.index;
  if (q1.language == Language::kIC) {
    leq = leq && q2.extra_lower->index >= q1.extra_lower->index &&
          q2.extra_upper->index <= q1.extra_upper->index;
  }
  return leq;
}

IntervalPattern pattern_meet(const IntervalPattern& q1, const IntervalPattern& q2) {
  require_same_language(q1, q2);
  if (q1.bottom) return q2;
  if (q2.bottom) return q1;
  const std::size_t lo = std::min(q1.lower.index, q2.lower.index);
  const std::size_t hi = std::max(q1.upper.index, q2.upper.index);
  if (q1.language == Language::kIC) {
    return IntervalPattern::make_ic(lo, hi,
                                    std::min(q1.extra_lower->index, q2.extra_lower->index),
                                    std::max(q1.extra_upper->index, q2.extra_upper->index));
  }
  return IntervalPattern::make(q1.language, lo, hi);
}

IntervalPattern describe(const Interval& delta, const ThresholdGrid& grid, Language lang) {
  if (delta.empty()) throw Error(ErrorCode::kEmptyInterval, "cannot describe an empty interval");
  const std::size_t k = grid.k();

  if (lang == Language::kNum) {
    if (delta.width() > grid.epsilon() * (1.0 + 1e-9))
      throw Error(ErrorCode::kPointExpected, "Num language expects point values");
    if (delta.hi < grid.lower() - tolerance(grid.lower()) ||
        delta.hi > grid.upper() + tolerance(grid.upper()))
      throw Error(ErrorCode::kInvalidArgument, "value outside the grid domain");
    std::size_t l = 0;
    while (l < k && delta.hi > grid.at(l + 1)) ++l;
    return IntervalPattern::make(Language::kNum, l, l + 1);
  }

  if (!grid.contains(delta))
    throw Error(ErrorCode::kInvalidArgument, "interval outside the grid domain");

  // Greatest i with hi > s_i, smallest j with lo < s_j.
  std::size_t cap_lower = 0;
  while (cap_lower < k && delta.hi > grid.at(cap_lower + 1)) ++cap_lower;
  std::size_t cap_upper = 1;
  while (cap_upper <= k && !(delta.lo < grid.at(cap_upper))) ++cap_upper;
  // Greatest i with lo >= s_i, smallest j with hi <= s_j.
  std::size_t sub_lower = 0;
  while (sub_lower < k && delta.lo >= grid.at(sub_lower + 1)) ++sub_lower;
  std::size_t sub_upper = 1;
  while (sub_upper <= k && !(delta.hi <= grid.at(sub_upper))) ++sub_upper;

  switch (lang) {
    case Language::kI: return IntervalPattern::make(Language::kI, cap_lower, cap_upper);
    case Language::kC: return IntervalPattern::make(Language::kC, sub_lower, sub_upper);
    case Language::kIC: return IntervalPattern::make_ic(cap_lower, cap_upper, sub_lower, sub_upper);
    case Language::kNum: break;
  }
  return IntervalPattern::top(lang, k);
}

Interpretation interpret(const IntervalPattern& q, const ThresholdGrid& grid) {
  using Form = Interpretation::Form;
  Interpretation out;
  if (q.bottom) {
    out.form = Form::kWithinRange;
    out.never = true;
    return out;
  }
  const std::size_t i = q.lower.index;
  const std::size_t j = q.upper.index;
  switch (q.language) {
    case Language::kNum:
      out.form = Form::kWithinRange;
      out.lo = grid.at(i);
      out.hi = grid.at(j);
      out.point_value = true;
      return out;
    case Language::kC:
      out.form = Form::kWithinRange;
      out.lo = grid.at(i);
      out.hi = grid.at(j);
      return out;
    case Language::kI:
      if (j > i) {
        out.form = Form::kIntersectsRange;
        out.lo = grid.at(i);
        out.hi = grid.at(j);
      } else {
        out.form = Form::kContainsRange;
        out.lo = grid.at(j);
        out.hi = grid.at(i) + grid.epsilon();
      }
      return out;
    case Language::kIC: {
      Interpretation cap = interpret(IntervalPattern::make(Language::kI, i, j), grid);
      const IntervalPattern sub =
          IntervalPattern::make(Language::kC, q.extra_lower->index, q.extra_upper->index);
      if (sub.is_top(grid.k())) return cap;
      out.form = Form::kConjunction;
      out.parts.push_back(std::move(cap));
      out.parts.push_back(interpret(sub, grid));
      return out;
    }
  }
  return out;
}

bool Interpretation::holds(const Interval& delta) const {
  if (never) return false;
  switch (form) {
    case Form::kIntersectsRange: return delta.lo < hi && delta.hi > lo;
    case Form::kContainsRange: return delta.lo < lo && delta.hi >= hi;
    case Form::kWithinRange:
      if (point_value) return delta.hi > lo && delta.hi <= hi;
      return delta.lo >= lo && delta.hi <= hi;
    case Form::kConjunction:
      return std::all_of(parts.begin(), parts.end(),
                         [&](const Interpretation& p) { return p.holds(delta); });
  }
  return false;
}

std::string Interpretation::text(std::string_view variable) const {
  const std::string var(variable);
  if (never) return "false";
  switch (form) {
    case Form::kIntersectsRange:
      return var + " intersects ]" + number(lo) + ", " + number(hi) + "]";
    case Form::kContainsRange:
      return var + " contains [" + number(lo) + ", " + number(hi) + "]";
    case Form::kWithinRange:
      return var + (point_value ? " in ]" : " within ]") + number(lo) + ", " + number(hi) + "]";
    case Form::kConjunction: {
      std::string out;
      for (const auto& p : parts) {
        if (!out.empty()) out += " and ";
        out += p.text(variable);
      }
      return out;
    }
  }
  return {};
}

std::vector<Interval> enumerate_distinguishable(const ThresholdGrid& grid) {
  // Class (l, u) with u <= l + 1 is represented by ]s_{u-1}, s_{l+1}].
  const std::size_t k = grid.k();
  std::vector<Interval> out;
  out.reserve((k + 1) * (k + 2) / 2);
  for (std::size_t l = 0; l <= k; ++l)
    for (std::size_t u = 1; u <= l + 1; ++u) out.push_back({grid.at(u - 1), grid.at(l + 1)});
  return out;
}

}  // namespace ivmine
