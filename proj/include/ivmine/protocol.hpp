#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include <Eigen/Core>

#include "ivmine/ingest.hpp"
#include "ivmine/metrics.hpp"

namespace ivmine {

// Where Num reads its points once intervals have been widened.
enum class NumSource { kOriginal, kMidpoint };
NumSource parse_num_source(std::string_view text);

// Dataset a language sees under the widening protocol: the widened
// intervals, or for Num the original points (or the interval midpoints).
RawDataset widened_view(const RawDataset& raw, std::span<const ThresholdGrid> grids, Language lang,
                        NumSource num_source, std::uint64_t seed);

// Point columns as a matrix, one row per object.
Eigen::MatrixXd point_matrix(const RawDataset& raw);

struct ClusteringConfig {
  std::size_t k = 3;
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  KMedoidsMethod method = KMedoidsMethod::kSwap;
  bool standardize = false;  // Euclidean route only
};

// Euclidean k-medoids on the original values.
TrialSummary cluster_points(const RawDataset& raw, const Partition& classes, const ClusteringConfig& cfg);
// Jaccard k-medoids on a fixed encoding; trials differ by initial medoids.
TrialSummary cluster_encoded(const EncodedDataset& ds, const Partition& classes, const ClusteringConfig& cfg);
// Trial t re-draws the widening and the initial medoids with seed + t, then
// clusters the encoding in `lang` with Jaccard distances.
TrialSummary cluster_widened(const RawDataset& raw, std::span<const ThresholdGrid> grids, Language lang,
                             NumSource num_source, const Partition& classes, const ClusteringConfig& cfg);

}  // namespace ivmine
