#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ivmine/distributional.hpp"
#include "ivmine/encoding.hpp"
#include "ivmine/interval.hpp"

namespace ivmine {

enum class ColumnType { kPoint, kInterval, kDistribution };

struct Column {
  std::string name;
  ColumnType type = ColumnType::kPoint;
  // Resolution of the column: 10^-d for values written with d decimals.
  double epsilon = 1.0;
  std::vector<CellValue> cells;
};

struct RawDataset {
  std::vector<Column> columns;
  std::vector<std::string> labels;  // empty when the file has no class column

  std::size_t rows() const noexcept { return columns.empty() ? labels.size() : columns.front().cells.size(); }
  bool has_labels() const noexcept { return !labels.empty(); }
};

struct LoadOptions {
  // Overrides the per-column resolution.
  std::optional<double> epsilon;
};

// Header row, then one object per row. Cells are plain numbers, `lo..hi`
// (stored as ]lo - eps, hi]), `N(mu,sigma)`, `U{c1,...}` or `E{x1,...}`.
// A last column named `class` holds labels.
RawDataset parse_csv(std::istream& in, const LoadOptions& options = {});
RawDataset load_csv(const std::filesystem::path& path, const LoadOptions& options = {});
std::string to_csv(const RawDataset& raw);

// Numeric values used for threshold construction: points, the user-facing
// bounds of intervals, distribution means.
std::vector<double> column_values(const Column& column);

// Thresholds min + i (max - min)/bins, i = 1..bins-1, over ]min, max].
ThresholdGrid equal_width_thresholds(std::span<const double> values, std::size_t bins, double epsilon);
std::vector<ThresholdGrid> equal_width_grids(const RawDataset& raw, std::size_t bins);

// Widening protocol: w ~ U[0, (max - min)/2] per value, emitting
// ]max(min, y - w), min(max, y + w)]; zero-width results are widened to
// ]y - eps, y] (or ]min, min + eps] at the lower bound). Draws for element
// i come from derive_seed(seed, stream, i).
std::vector<Interval> intervalize(std::span<const double> points, const ThresholdGrid& grid,
                                  std::uint64_t seed, std::uint64_t stream = 0);
// Point columns become interval columns over their grids.
RawDataset widen(const RawDataset& raw, std::span<const ThresholdGrid> grids, std::uint64_t seed);
// Interval columns become their midpoints.
RawDataset midpoints(const RawDataset& raw);

struct NoiseConfig {
  double sigma_reduction = 1.75;
  std::uint64_t seed = 0;
  // One sigma draw per object shared by all columns (scaled per column).
  bool shared_draw = false;
};

// Range / (2 Phi^-1(0.9)): min and max become the first and last deciles.
double sigma_max_for_range(double zmin, double zmax);

struct Measurement {
  std::vector<double> observed;
  std::vector<Cdf> distributions;
  std::vector<double> sigmas;
};

// sigma_o uniform in ]0, sigma_max/r], v ~ N(z, sigma_o), F_v = N(v, sigma_o).
Measurement simulate_measurement(std::span<const double> z, const NoiseConfig& cfg,
                                 std::uint64_t stream = 0);

struct Simulation {
  RawDataset observed;       // points v
  RawDataset distributions;  // N(v, sigma_o)
};
Simulation simulate(const RawDataset& raw, const NoiseConfig& cfg);

struct DatasetRequest {
  Language language = Language::kI;
  std::vector<double> alphas;  // for distribution columns
};

struct NamedDataset {
  std::string name;
  EncodedDataset dataset;
};

// `<base>_<lang><k>[_<a1>-<a2>...]`.
std::string dataset_name(std::string_view base, Language lang, std::size_t k,
                         std::span<const double> alphas);

// One vocabulary variable per column; distribution columns get the alphas and
// an unbounded domain.
std::vector<VariableSpec> variable_specs(const RawDataset& raw, std::span<const ThresholdGrid> grids,
                                         const DatasetRequest& request);
EncodedDataset encode_raw(const RawDataset& raw, std::vector<VariableSpec> specs);
std::vector<NamedDataset> build_datasets(const RawDataset& raw, std::span<const ThresholdGrid> grids,
                                         std::span<const DatasetRequest> requests,
                                         std::string_view base);

// Shortest text that reads back to the same double.
std::string format_number(double x);

}  // namespace ivmine
