#include "ivmine/protocol.hpp"

#include <cmath>
#include <numeric>

#include "ivmine/error.hpp"

namespace ivmine {
namespace {

TrialSummary summarize(std::vector<double> scores, std::vector<Partition> partitions) {
  TrialSummary out;
  const double n = static_cast<double>(scores.size());
  out.mean = std::accumulate(scores.begin(), scores.end(), 0.0) / n;
  if (scores.size() > 1) {
    double ss = 0.0;
    for (double s : scores) ss += (s - out.mean) * (s - out.mean);
    out.stddev = std::sqrt(ss / (n - 1.0));
  }
  out.scores = std::move(scores);
  out.partitions = std::move(partitions);
  return out;
}

}  // namespace

NumSource parse_num_source(std::string_view text) {
  if (text == "original") return NumSource::kOriginal;
  if (text == "midpoint") return NumSource::kMidpoint;
  throw Error(ErrorCode::kInvalidArgument, "unknown Num source '" + std::string(text) + "'");
}

RawDataset widened_view(const RawDataset& raw, std::span<const ThresholdGrid> grids, Language lang,
                        NumSource num_source, std::uint64_t seed) {
  if (lang == Language::kNum && num_source == NumSource::kOriginal) return raw;
  RawDataset wide = widen(raw, grids, seed);
  return lang == Language::kNum ? midpoints(wide) : wide;
}

Eigen::MatrixXd point_matrix(const RawDataset& raw) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(raw.rows()), static_cast<Eigen::Index>(raw.columns.size()));
  for (std::size_t c = 0; c < raw.columns.size(); ++c) {
    const Column& col = raw.columns[c];
    if (col.type != ColumnType::kPoint)
      throw Error(ErrorCode::kInvalidArgument, "column " + col.name + " is not point-valued");
    for (std::size_t r = 0; r < col.cells.size(); ++r)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = std::get<double>(col.cells[r]);
  }
  return m;
}

TrialSummary cluster_points(const RawDataset& raw, const Partition& classes, const ClusteringConfig& cfg) {
  Eigen::MatrixXd points = point_matrix(raw);
  if (cfg.standardize) points = standardize_columns(points);
  return k_medoids_trials(euclidean_distance_matrix(points), cfg.k, cfg.trials, cfg.seed,
                          [&](const Partition& p) { return overall_f_measure(p, classes); }, cfg.method);
}

TrialSummary cluster_encoded(const EncodedDataset& ds, const Partition& classes, const ClusteringConfig& cfg) {
  return k_medoids_trials(jaccard_distance_matrix(ds), cfg.k, cfg.trials, cfg.seed,
                          [&](const Partition& p) { return overall_f_measure(p, classes); }, cfg.method);
}

TrialSummary cluster_widened(const RawDataset& raw, std::span<const ThresholdGrid> grids, Language lang,
                             NumSource num_source, const Partition& classes, const ClusteringConfig& cfg) {
  if (cfg.trials < 1) throw Error(ErrorCode::kInvalidArgument, "at least one trial is needed");
  std::vector<double> scores;
  std::vector<Partition> partitions;
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    const std::uint64_t seed = cfg.seed + t;
    const RawDataset view = widened_view(raw, grids, lang, num_source, seed);
    const EncodedDataset ds = encode_raw(view, variable_specs(view, grids, {lang, {}}));
    KMedoidsRun run = k_medoids(jaccard_distance_matrix(ds), cfg.k, seed, 100, cfg.method);
    scores.push_back(overall_f_measure(run.partition, classes));
    partitions.push_back(std::move(run.partition));
  }
  return summarize(std::move(scores), std::move(partitions));
}

}  // namespace ivmine
