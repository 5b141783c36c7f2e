#include "ivmine/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>

#include "ivmine/error.hpp"
#include "ivmine/random.hpp"

namespace ivmine {

Partition::Partition(std::vector<Bitset> classes) : classes_(std::move(classes)) {
  if (classes_.empty()) return;
  const std::size_t n = classes_.front().size();
  Bitset seen(n);
  for (const auto& c : classes_) {
    if (c.size() != n) throw Error(ErrorCode::kInvalidArgument, "classes over different universes");
    if (c.none()) throw Error(ErrorCode::kInvalidArgument, "empty class");
    if (c.intersects(seen)) throw Error(ErrorCode::kInvalidArgument, "classes overlap");
    seen |= c;
  }
  if (seen.count() != n) throw Error(ErrorCode::kInvalidArgument, "classes do not cover all objects");
}

Partition Partition::from_labels(std::span<const std::string> labels) {
  std::map<std::string, std::size_t> index;
  std::vector<std::size_t> assignment;
  assignment.reserve(labels.size());
  for (const auto& label : labels) {
    const auto [it, inserted] = index.emplace(label, index.size());
    assignment.push_back(it->second);
  }
  return from_assignment(assignment);
}

Partition Partition::from_assignment(std::span<const std::size_t> assignment) {
  const std::size_t n = assignment.size();
  std::vector<Bitset> classes;
  std::map<std::size_t, std::size_t> slot;
  for (std::size_t i = 0; i < n; ++i) {
    const auto [it, inserted] = slot.emplace(assignment[i], classes.size());
    if (inserted) classes.emplace_back(n);
    classes[it->second].set(i);
  }
  return Partition(std::move(classes));
}

std::vector<std::size_t> Partition::assignment() const {
  std::vector<std::size_t> out(universe());
  for (std::size_t c = 0; c < classes_.size(); ++c)
    classes_[c].for_each([&](std::size_t i) { out[i] = c; });
  return out;
}

double jaccard_distance(const Bitset& a, const Bitset& b) {
  const std::size_t inter = a.intersection_count(b);
  const std::size_t uni = a.count() + b.count() - inter;
  if (uni == 0) throw Error(ErrorCode::kInvalidArgument, "Jaccard distance of two empty sets");
  return 1.0 - static_cast<double>(inter) / static_cast<double>(uni);
}

double dist_to_partition(std::span<const Bitset> supports, const Partition& classes) {
  if (supports.empty()) throw Error(ErrorCode::kInvalidArgument, "empty family of support sets");
  if (classes.size() == 0) throw Error(ErrorCode::kInvalidArgument, "empty partition");
  double total = 0.0;
  for (const auto& c : classes.classes()) {
    double best = 1.0;
    for (const auto& s : supports) best = std::min(best, jaccard_distance(c, s));
    total += best;
  }
  return total / static_cast<double>(classes.size());
}

std::size_t covering(std::span<const Bitset> supports) {
  if (supports.empty()) return 0;
  Bitset all(supports.front().size());
  for (const auto& s : supports) all |= s;
  return all.count();
}

double avg_support(std::span<const Bitset> supports) {
  if (supports.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& s : supports) sum += static_cast<double>(s.count());
  return sum / static_cast<double>(supports.size());
}

Eigen::MatrixXd jaccard_distance_matrix(const EncodedDataset& ds) {
  const auto n = static_cast<Eigen::Index>(ds.size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Bitset& a = ds.objects()[static_cast<std::size_t>(i)].items;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const Bitset& b = ds.objects()[static_cast<std::size_t>(j)].items;
      d(i, j) = d(j, i) = (a.none() && b.none()) ? 0.0 : jaccard_distance(a, b);
    }
  }
  return d;
}

Eigen::MatrixXd euclidean_distance_matrix(const Eigen::MatrixXd& points) {
  const Eigen::Index n = points.rows();
  Eigen::MatrixXd d(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) d(i, j) = (points.row(i) - points.row(j)).norm();
  return d;
}

Eigen::MatrixXd standardize_columns(const Eigen::MatrixXd& points) {
  Eigen::MatrixXd out = points.rowwise() - points.colwise().mean();
  if (points.rows() < 2) return out;
  for (Eigen::Index c = 0; c < out.cols(); ++c) {
    const double sd = std::sqrt(out.col(c).squaredNorm() / static_cast<double>(out.rows() - 1));
    if (sd > 0.0) out.col(c) /= sd;
  }
  return out;
}

KMedoidsMethod parse_kmedoids_method(std::string_view text) {
  if (text == "alternate") return KMedoidsMethod::kAlternate;
  if (text == "swap") return KMedoidsMethod::kSwap;
  throw Error(ErrorCode::kInvalidArgument, "unknown k-medoids method '" + std::string(text) + "'");
}

namespace {

double at(const Eigen::MatrixXd& d, std::size_t i, std::size_t j) {
  return d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
}

// Nearest medoid of every object (a medoid always owns itself; ties go to the
// lowest medoid slot). Returns the total distance.
double assign_nearest(const Eigen::MatrixXd& dist, const std::vector<std::size_t>& medoids,
                      std::vector<std::size_t>& assign) {
  double objective = 0.0;
  for (std::size_t i = 0; i < assign.size(); ++i) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < medoids.size(); ++c) {
      if (medoids[c] == i) {
        best = c;
        best_d = 0.0;
        break;
      }
      const double d = at(dist, i, medoids[c]);
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    assign[i] = best;
    objective += best_d;
  }
  return objective;
}

double total_cost(const Eigen::MatrixXd& dist, const std::vector<std::size_t>& medoids) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < dist.rows(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t m : medoids) best = std::min(best, dist(i, static_cast<Eigen::Index>(m)));
    total += best;
  }
  return total;
}

}  // namespace

KMedoidsRun k_medoids(const Eigen::MatrixXd& dist, std::size_t k, std::uint64_t seed,
                      std::size_t max_iterations, KMedoidsMethod method) {
  const auto n = static_cast<std::size_t>(dist.rows());
  if (dist.rows() != dist.cols()) throw Error(ErrorCode::kInvalidArgument, "distance matrix not square");
  if (k < 1 || k > n)
    throw Error(ErrorCode::kInvalidArgument,
                "k=" + std::to_string(k) + " exceeds " + std::to_string(n) + " objects");

  SplitMix64 rng(splitmix64(seed));
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  std::vector<std::size_t> medoids(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));

  KMedoidsRun run;
  std::vector<std::size_t> assign(n);
  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    ++run.iterations;
    run.objective.push_back(assign_nearest(dist, medoids, assign));

    bool changed = false;
    for (std::size_t c = 0; c < k; ++c) {
      std::size_t best = medoids[c];
      double best_sum = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < n; ++i) {
        if (assign[i] != c) continue;
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j)
          if (assign[j] == c) sum += at(dist, i, j);
        // Keep the current medoid on ties.
        if (sum < best_sum || (sum == best_sum && i == medoids[c])) {
          best_sum = sum;
          best = i;
        }
      }
      if (best != medoids[c]) {
        medoids[c] = best;
        changed = true;
      }
    }
    if (!changed) break;
  }

  if (method == KMedoidsMethod::kSwap) {
    double cost = total_cost(dist, medoids);
    std::vector<char> is_medoid(n, 0);
    for (std::size_t m : medoids) is_medoid[m] = 1;
    for (std::size_t iter = 0; iter < max_iterations; ++iter) {
      double best_cost = cost;
      std::size_t best_c = k;
      std::size_t best_o = n;
      for (std::size_t c = 0; c < k; ++c) {
        const std::size_t old = medoids[c];
        for (std::size_t o = 0; o < n; ++o) {
          if (is_medoid[o]) continue;
          medoids[c] = o;
          const double trial = total_cost(dist, medoids);
          // Strict improvement with a relative margin guards against cycling.
          if (trial < best_cost - 1e-12 * std::max(1.0, std::abs(best_cost))) {
            best_cost = trial;
            best_c = c;
            best_o = o;
          }
        }
        medoids[c] = old;
      }
      if (best_c == k) break;
      is_medoid[medoids[best_c]] = 0;
      is_medoid[best_o] = 1;
      medoids[best_c] = best_o;
      cost = best_cost;
      ++run.iterations;
      run.objective.push_back(cost);
    }
    run.objective.push_back(assign_nearest(dist, medoids, assign));
  }

  run.medoids = medoids;
  run.partition = Partition::from_assignment(assign);
  return run;
}

TrialSummary k_medoids_trials(const Eigen::MatrixXd& dist, std::size_t k, std::size_t trials,
                              std::uint64_t seed,
                              const std::function<double(const Partition&)>& score,
                              KMedoidsMethod method) {
  if (trials < 1) throw Error(ErrorCode::kInvalidArgument, "at least one trial is needed");
  TrialSummary out;
  for (std::size_t t = 0; t < trials; ++t) {
    KMedoidsRun run = k_medoids(dist, k, seed + t, 100, method);
    out.scores.push_back(score(run.partition));
    out.partitions.push_back(std::move(run.partition));
  }
  const double n = static_cast<double>(trials);
  out.mean = std::accumulate(out.scores.begin(), out.scores.end(), 0.0) / n;
  if (trials > 1) {
    double ss = 0.0;
    for (double s : out.scores) ss += (s - out.mean) * (s - out.mean);
    out.stddev = std::sqrt(ss / (n - 1.0));
  }
  return out;
}

double overall_f_measure(const Partition& clusters, const Partition& classes) {
  if (clusters.universe() != classes.universe() || classes.size() == 0 || clusters.size() == 0)
    throw Error(ErrorCode::kInvalidArgument, "partitions over different object sets");
  const double n = static_cast<double>(classes.universe());
  double total = 0.0;
  for (const auto& c : classes.classes()) {
    const double csize = static_cast<double>(c.count());
    double best = 0.0;
    for (const auto& p : clusters.classes()) {
      const double inter = static_cast<double>(c.intersection_count(p));
      if (inter == 0.0) continue;
      const double precision = inter / static_cast<double>(p.count());
      const double recall = inter / csize;
      best = std::max(best, 2.0 * precision * recall / (precision + recall));
    }
    total += csize / n * best;
  }
  return total;
}

Partition random_partition(const Partition& classes, std::uint64_t seed) {
  std::vector<std::size_t> assign = classes.assignment();
  SplitMix64 rng(splitmix64(seed));
  std::shuffle(assign.begin(), assign.end(), rng);
  return Partition::from_assignment(assign);
}

SupportStats support_statistics(std::span<const Bitset> supports, const Partition& classes,
                                 std::uint64_t seed) {
  SupportStats out;
  out.patterns = supports.size();
  out.covering = covering(supports);
  out.mean_support = avg_support(supports);
  out.ds_classes = dist_to_partition(supports, classes);
  out.ds_random = dist_to_partition(supports, random_partition(classes, seed));
  return out;
}

}  // namespace ivmine
