#include "ivmine/distributional.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ivmine/encoding.hpp"
#include "ivmine/error.hpp"

namespace ivmine {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw Error(ErrorCode::kInvalidArgument, "quantile level must lie in ]0,1[");
  double lo = -40.0;
  double hi = 40.0;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (normal_cdf(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Cdf Cdf::normal(double mean, double stddev) {
  if (!(stddev > 0.0) || !std::isfinite(stddev) || !std::isfinite(mean))
    throw Error(ErrorCode::kInvalidArgument, "normal distribution needs a finite mean and sigma > 0");
  Cdf f;
  f.kind_ = Kind::kNormal;
  f.mean_ = mean;
  f.stddev_ = stddev;
  return f;
}

Cdf Cdf::discrete_uniform(std::vector<double> support) {
  if (support.empty()) throw Error(ErrorCode::kInvalidArgument, "empty discrete support");
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  Cdf f;
  f.kind_ = Kind::kDiscreteUniform;
  f.samples_ = std::move(support);
  return f;
}

Cdf Cdf::empirical(std::vector<double> samples) {
  if (samples.empty()) throw Error(ErrorCode::kInvalidArgument, "empirical cdf needs samples");
  std::sort(samples.begin(), samples.end());
  Cdf f;
  f.kind_ = Kind::kEmpirical;
  f.samples_ = std::move(samples);
  return f;
}

std::vector<double> Cdf::support() const {
  std::vector<double> out = samples_;
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double Cdf::median() const {
  if (continuous()) return mean_;
  return quantile(*this, 0.5);
}

double Cdf::operator()(double z) const {
  if (kind_ == Kind::kNormal) return normal_cdf((z - mean_) / stddev_);
  const auto n = std::upper_bound(samples_.begin(), samples_.end(), z) - samples_.begin();
  return static_cast<double>(n) / static_cast<double>(samples_.size());
}

std::string Cdf::token() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case Kind::kNormal: os << "N(" << mean_ << "," << stddev_ << ")"; break;
    case Kind::kDiscreteUniform:
    case Kind::kEmpirical: {
      os << (kind_ == Kind::kEmpirical ? "E{" : "U{");
      for (std::size_t i = 0; i < samples_.size(); ++i) os << (i ? "," : "") << samples_[i];
      os << "}";
      break;
    }
  }
  return os.str();
}

AlphaLevel::AlphaLevel(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha < 0.5))
    throw Error(ErrorCode::kInvalidArgument, "alpha must lie in ]0, 0.5[");
}

double quantile(const Cdf& f, double v, std::optional<double> step) {
  if (!(v > 0.0 && v < 1.0))
    throw Error(ErrorCode::kInvalidArgument, "quantile level must lie in ]0,1[");
  if (f.continuous()) return f.mean() + f.stddev() * normal_quantile(v);

  const std::vector<double> c = f.support();
  if (v < 0.5) {
    double best = 0.0;
    bool found = false;
    for (double x : c) {
      if (f(x) <= v) {
        best = x;
        found = true;
      }
    }
    if (found) return best;
    double gap = 1.0;
    if (!step && c.size() > 1) {
      gap = c[1] - c[0];
      for (std::size_t i = 2; i < c.size(); ++i) gap = std::min(gap, c[i] - c[i - 1]);
    }
    return c.front() - step.value_or(gap);
  }
  for (double x : c)
    if (f(x) >= v) return x;
  return c.back();
}

Interval delta_alpha(const Cdf& f, AlphaLevel alpha, std::optional<double> step) {
  const Interval delta{quantile(f, alpha, step), quantile(f, 1.0 - alpha, step)};
  if (delta.empty())
    throw Error(ErrorCode::kEmptyInterval, "degenerate quantile interval for " + f.token());
  return delta;
}

bool dist_atom_holds(const Cdf& f, DistAtom atom, double s, AlphaLevel alpha) {
  const double fs = f(s);
  switch (atom) {
    case DistAtom::kAbove: return fs > alpha;
    case DistAtom::kBelow: return fs < 1.0 - alpha;
    case DistAtom::kAtMost: return fs <= alpha;
    case DistAtom::kAtLeast: return fs >= 1.0 - alpha;
  }
  return false;
}

bool delta_atom_holds(const Interval& delta, DistAtom atom, double s) {
  switch (atom) {
    case DistAtom::kAbove: return delta.lo < s;    // meets ]lower, s]
    case DistAtom::kBelow: return delta.hi > s;    // meets ]s, upper]
    case DistAtom::kAtMost: return delta.lo >= s;  // within ]s, upper]
    case DistAtom::kAtLeast: return delta.hi <= s; // within ]lower, s]
  }
  return false;
}

std::vector<std::size_t> encode_distribution(const Cdf& f, const ThresholdGrid& grid,
                                             std::span<const double> alphas, Language lang) {
  if (alphas.empty()) throw Error(ErrorCode::kInvalidArgument, "at least one alpha level is needed");
  std::vector<double> sorted(alphas.begin(), alphas.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(ErrorCode::kInvalidArgument, "alpha levels must be distinct");
  const ItemVocabulary voc({VariableSpec{"x", lang, grid, {alphas.begin(), alphas.end()}}});
  const CellValue cell = f;
  return encode_object(std::span(&cell, 1), voc).indices();
}

std::pair<bool, bool> symmetric_coverage_check(double z, double v, double sigma, AlphaLevel alpha) {
  if (!(sigma > 0.0)) throw Error(ErrorCode::kInvalidArgument, "sigma must be positive");
  const double fz_v = normal_cdf((v - z) / sigma);
  const double fv_z = normal_cdf((z - v) / sigma);
  return {alpha < fz_v && fz_v < 1.0 - alpha, alpha < fv_z && fv_z < 1.0 - alpha};
}

}  // namespace ivmine
