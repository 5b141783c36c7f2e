#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ivmine/bitset.hpp"
#include "ivmine/encoding.hpp"

namespace ivmine {

// Disjoint, exhaustive, non-empty classes over objects 0..n-1.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<Bitset> classes);

  // Classes in order of first appearance of each label.
  static Partition from_labels(std::span<const std::string> labels);
  static Partition from_assignment(std::span<const std::size_t> assignment);

  const std::vector<Bitset>& classes() const noexcept { return classes_; }
  std::size_t size() const noexcept { return classes_.size(); }
  std::size_t universe() const noexcept { return classes_.empty() ? 0 : classes_.front().size(); }
  // Class index of every object.
  std::vector<std::size_t> assignment() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<Bitset> classes_;
};

double jaccard_distance(const Bitset& a, const Bitset& b);

// Mean over classes of the smallest Jaccard distance to a support set.
double dist_to_partition(std::span<const Bitset> supports, const Partition& classes);

// Objects belonging to at least one support set.
std::size_t covering(std::span<const Bitset> supports);
double avg_support(std::span<const Bitset> supports);

// Pairwise Jaccard distances between object itemsets (0 for two empty sets).
Eigen::MatrixXd jaccard_distance_matrix(const EncodedDataset& ds);
// Rows of `points` are objects.
Eigen::MatrixXd euclidean_distance_matrix(const Eigen::MatrixXd& points);
// Zero mean, unit (sample) deviation per column; constant columns are centred only.
Eigen::MatrixXd standardize_columns(const Eigen::MatrixXd& points);

struct KMedoidsRun {
  Partition partition;
  std::vector<std::size_t> medoids;
  // Sum of distances to the assigned medoid after each assignment step.
  std::vector<double> objective;
  std::size_t iterations = 0;
};

enum class KMedoidsMethod {
  // Assign every object to its nearest medoid, then move each medoid to the
  // member with the smallest distance sum, until the medoids stop changing.
  kAlternate,
  // Alternate first, then apply the best improving (medoid, non-medoid)
  // swap of the total cost until none improves.
  kSwap,
};

KMedoidsMethod parse_kmedoids_method(std::string_view text);

// Random distinct initial medoids from the seed, then `method`; at most
// `max_iterations` rounds of each phase.
KMedoidsRun k_medoids(const Eigen::MatrixXd& dist, std::size_t k, std::uint64_t seed,
                      std::size_t max_iterations = 100,
                      KMedoidsMethod method = KMedoidsMethod::kSwap);

struct TrialSummary {
  std::vector<Partition> partitions;
  std::vector<double> scores;
  double mean = 0.0;
  double stddev = 0.0;  // sample deviation
};

// Trial t runs with seed + t.
TrialSummary k_medoids_trials(const Eigen::MatrixXd& dist, std::size_t k, std::size_t trials,
                              std::uint64_t seed,
                              const std::function<double(const Partition&)>& score,
                              KMedoidsMethod method = KMedoidsMethod::kSwap);

// Sum over classes of |c|/n times the best F1 against any cluster.
double overall_f_measure(const Partition& clusters, const Partition& classes);

// Uniform shuffle of the class assignment keeping class sizes.
Partition random_partition(const Partition& classes, std::uint64_t seed);

// One row of support-set statistics; the random baseline uses
// random_partition(classes, seed).
struct SupportStats {
  std::size_t patterns = 0;
  std::size_t covering = 0;
  double mean_support = 0.0;
  double ds_classes = 0.0;
  double ds_random = 0.0;
};
SupportStats support_statistics(std::span<const Bitset> supports, const Partition& classes,
                                 std::uint64_t seed);

}  // namespace ivmine
