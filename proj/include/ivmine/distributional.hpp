#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ivmine/interval.hpp"

namespace ivmine {

// Standard normal cdf and its inverse (bisection on the cdf).
double normal_cdf(double x);
double normal_quantile(double p);

// Cumulative distribution F(z) = p(Z <= z) of a variable.
class Cdf {
 public:
  enum class Kind { kNormal, kDiscreteUniform, kEmpirical };

  static Cdf normal(double mean, double stddev);
  // Equal mass on each (distinct) support point.
  static Cdf discrete_uniform(std::vector<double> support);
  // Right-continuous step function of the samples.
  static Cdf empirical(std::vector<double> samples);

  Kind kind() const noexcept { return kind_; }
  bool continuous() const noexcept { return kind_ == Kind::kNormal; }
  double mean() const noexcept { return mean_; }
  double stddev() const noexcept { return stddev_; }
  // Sorted sample / support values of the discrete kinds.
  const std::vector<double>& samples() const noexcept { return samples_; }
  // Distinct support values of the discrete kinds.
  std::vector<double> support() const;
  double median() const;

  double operator()(double z) const;

  // `N(mu,sigma)` or `U{c1,c2,...}`.
  std::string token() const;

  friend bool operator==(const Cdf&, const Cdf&) = default;

 private:
  Kind kind_ = Kind::kNormal;
  double mean_ = 0.0;
  double stddev_ = 1.0;
  std::vector<double> samples_;
};

class AlphaLevel {
 public:
  explicit AlphaLevel(double alpha);
  double value() const noexcept { return alpha_; }
  operator double() const noexcept { return alpha_; }

 private:
  double alpha_;
};

// Quantile q^v. Continuous kinds invert F by bisection. Discrete kinds use
// max{c : F(c) <= v} when v < 0.5 and min{c : F(c) >= v} otherwise; when no
// support point has F(c) <= v the result is min(C) - step. `step` defaults
// to the smallest gap between support points (1 for a single point).
double quantile(const Cdf& f, double v, std::optional<double> step = std::nullopt);

// ]q^alpha, q^{1-alpha}].
Interval delta_alpha(const Cdf& f, AlphaLevel alpha, std::optional<double> step = std::nullopt);

enum class DistAtom {
  kAbove,    // F(s) > alpha
  kBelow,    // F(s) < 1 - alpha
  kAtMost,   // F(s) <= alpha
  kAtLeast,  // F(s) >= 1 - alpha
};

bool dist_atom_holds(const Cdf& f, DistAtom atom, double s, AlphaLevel alpha);
// The same four atoms stated on the interval delta_alpha.
bool delta_atom_holds(const Interval& delta, DistAtom atom, double s);

// Itemset of one distribution-valued variable: for each alpha, delta_alpha
// is described and encoded in `lang` (I or IC); the per-alpha blocks are
// disjoint. Returned item ids follow the single-variable vocabulary built
// from (grid, alphas, lang).
std::vector<std::size_t> encode_distribution(const Cdf& f, const ThresholdGrid& grid,
                                             std::span<const double> alphas, Language lang);

// (alpha < F_z(v) < 1-alpha, alpha < F_v(z) < 1-alpha) for normals with a
// common sigma centred on z and v.
std::pair<bool, bool> symmetric_coverage_check(double z, double v, double sigma, AlphaLevel alpha);

}  // namespace ivmine
