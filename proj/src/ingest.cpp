#include "ivmine/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>

#include "ivmine/error.hpp"
#include "ivmine/random.hpp"

namespace ivmine {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Split on commas outside (...) and {...}.
std::vector<std::string_view> split_row(std::string_view line) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (c == '(' || c == '{') ++depth;
    if ((c == ')' || c == '}') && depth > 0) --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(line.substr(start, i - start)));
      start = i + 1;
    }
  }
  out.push_back(trim(line.substr(start)));
  return out;
}

struct Number {
  double value;
  int decimals;
};

std::optional<Number> parse_number(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || end != s.data() + s.size() || !std::isfinite(value)) return std::nullopt;
  int decimals = 0;
  int exponent = 0;
  const auto e = s.find_first_of("eE");
  const std::string_view mantissa = s.substr(0, e);
  if (const auto dot = mantissa.find('.'); dot != std::string_view::npos)
    decimals = static_cast<int>(mantissa.size() - dot - 1);
  if (e != std::string_view::npos) {
    std::string_view ex = s.substr(e + 1);
    if (!ex.empty() && ex.front() == '+') ex.remove_prefix(1);
    std::from_chars(ex.data(), ex.data() + ex.size(), exponent);
  }
  return Number{value, std::max(0, decimals - exponent)};
}

std::vector<Number> parse_list(std::string_view body) {
  std::vector<Number> out;
  for (std::string_view part : split_row(body)) {
    const auto n = parse_number(part);
    if (!n) return {};
    out.push_back(*n);
  }
  return out;
}

struct ParsedCell {
  ColumnType type;
  CellValue value;  // intervals hold the raw bounds until eps is known
  int decimals;
};

std::optional<ParsedCell> parse_cell(std::string_view cell) {
  if (const auto n = parse_number(cell)) return ParsedCell{ColumnType::kPoint, n->value, n->decimals};

  if (const auto dots = cell.find(".."); dots != std::string_view::npos) {
    const auto lo = parse_number(cell.substr(0, dots));
    const auto hi = parse_number(cell.substr(dots + 2));
    if (!lo || !hi || lo->value > hi->value) return std::nullopt;
    return ParsedCell{ColumnType::kInterval, Interval{lo->value, hi->value},
                      std::max(lo->decimals, hi->decimals)};
  }

  if (cell.size() >= 3 && (cell[0] == 'U' || cell[0] == 'E') && cell[1] == '{' && cell.back() == '}') {
    const auto xs = parse_list(cell.substr(2, cell.size() - 3));
    if (xs.empty()) return std::nullopt;
    std::vector<double> values;
    int decimals = 0;
    for (const auto& x : xs) {
      values.push_back(x.value);
      decimals = std::max(decimals, x.decimals);
    }
    Cdf f = cell[0] == 'U' ? Cdf::discrete_uniform(std::move(values)) : Cdf::empirical(std::move(values));
    return ParsedCell{ColumnType::kDistribution, std::move(f), decimals};
  }

  if (cell.size() >= 4 && cell[0] == 'N' && cell[1] == '(' && cell.back() == ')') {
    const auto xs = parse_list(cell.substr(2, cell.size() - 3));
    if (xs.size() != 2 || !(xs[1].value > 0.0)) return std::nullopt;
    return ParsedCell{ColumnType::kDistribution, Cdf::normal(xs[0].value, xs[1].value),
                      std::max(xs[0].decimals, xs[1].decimals)};
  }
  return std::nullopt;
}

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

// Uniform in ]0, 1[.
double open_uniform(std::uint64_t seed) {
  return (static_cast<double>(SplitMix64(seed)() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

std::string format_number(double x) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

RawDataset parse_csv(std::istream& in, const LoadOptions& options) {
  if (options.epsilon && !(*options.epsilon > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "resolution must be positive");
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!trim(line).empty()) return true;
    }
    return false;
  };
  if (!next_line()) throw Error(ErrorCode::kParse, "missing header row");

  RawDataset raw;
  const auto header = split_row(line);
  std::size_t width = header.size();
  const bool labelled = lowercase(header.back()) == "class";
  const std::size_t vars = labelled ? width - 1 : width;
  std::vector<int> decimals(vars, 0);
  for (std::size_t c = 0; c < vars; ++c) {
    if (header[c].empty()) throw Error(ErrorCode::kParse, "empty column name in header");
    raw.columns.push_back(Column{std::string(header[c]), ColumnType::kPoint, 1.0, {}});
  }

  std::size_t row = 0;
  while (next_line()) {
    ++row;
    const auto cells = split_row(line);
    if (cells.size() != width)
      throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": expected " +
                                         std::to_string(width) + " cells, found " +
                                         std::to_string(cells.size()));
    for (std::size_t c = 0; c < vars; ++c) {
      const auto parsed = parse_cell(cells[c]);
      const std::string where =
          "line " + std::to_string(line_no) + ", column " + std::to_string(c + 1) + " (" + raw.columns[c].name + ")";
      if (!parsed) throw Error(ErrorCode::kParse, where + ": malformed cell '" + std::string(cells[c]) + "'");
      if (row == 1) raw.columns[c].type = parsed->type;
      else if (raw.columns[c].type != parsed->type)
        throw Error(ErrorCode::kParse, where + ": cell type differs from earlier rows");
      decimals[c] = std::max(decimals[c], parsed->decimals);
      raw.columns[c].cells.push_back(parsed->value);
    }
    if (labelled) {
      if (cells.back().empty()) throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": empty class label");
      raw.labels.emplace_back(cells.back());
    }
  }

  for (std::size_t c = 0; c < vars; ++c) {
    Column& col = raw.columns[c];
    col.epsilon = options.epsilon ? *options.epsilon : std::pow(10.0, -decimals[c]);
    if (col.type != ColumnType::kInterval) continue;
    for (auto& cell : col.cells) {
      auto& iv = std::get<Interval>(cell);
      iv.lo -= col.epsilon;
    }
  }
  return raw;
}

RawDataset load_csv(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  return parse_csv(in, options);
}

std::string to_csv(const RawDataset& raw) {
  std::ostringstream os;
  for (std::size_t c = 0; c < raw.columns.size(); ++c) os << (c ? "," : "") << raw.columns[c].name;
  if (raw.has_labels()) os << (raw.columns.empty() ? "" : ",") << "class";
  os << '\n';
  for (std::size_t r = 0; r < raw.rows(); ++r) {
    for (std::size_t c = 0; c < raw.columns.size(); ++c) {
      const Column& col = raw.columns[c];
      if (c) os << ',';
      const CellValue& cell = col.cells[r];
      if (const auto* y = std::get_if<double>(&cell)) os << format_number(*y);
      else if (const auto* iv = std::get_if<Interval>(&cell))
        os << format_number(iv->lo + col.epsilon) << ".." << format_number(iv->hi);
      else os << std::get<Cdf>(cell).token();
    }
    if (raw.has_labels()) os << (raw.columns.empty() ? "" : ",") << raw.labels[r];
    os << '\n';
  }
  return os.str();
}

std::vector<double> column_values(const Column& column) {
  std::vector<double> out;
  out.reserve(column.cells.size() * 2);
  for (const auto& cell : column.cells) {
    if (const auto* y = std::get_if<double>(&cell)) {
      out.push_back(*y);
    } else if (const auto* iv = std::get_if<Interval>(&cell)) {
      out.push_back(std::min(iv->hi, iv->lo + column.epsilon));
      out.push_back(iv->hi);
    } else {
      out.push_back(std::get<Cdf>(cell).mean());
    }
  }
  return out;
}

ThresholdGrid equal_width_thresholds(std::span<const double> values, std::size_t bins, double epsilon) {
  if (bins < 2) throw Error(ErrorCode::kInvalidArgument, "at least 2 bins are needed");
  if (values.empty()) throw Error(ErrorCode::kInvalidArgument, "no values to bin");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (!(hi > lo)) throw Error(ErrorCode::kInvalidArgument, "constant column cannot be binned");
  std::vector<double> thresholds;
  const double width = (hi - lo) / static_cast<double>(bins);
  for (std::size_t i = 1; i < bins; ++i) thresholds.push_back(lo + static_cast<double>(i) * width);
  return ThresholdGrid(lo, std::move(thresholds), hi, epsilon);
}

std::vector<ThresholdGrid> equal_width_grids(const RawDataset& raw, std::size_t bins) {
  std::vector<ThresholdGrid> grids;
  for (const auto& col : raw.columns) {
    try {
      ThresholdGrid g = equal_width_thresholds(column_values(col), bins, col.epsilon);
      // Stored interval bounds sit one resolution step below the written ones.
      if (col.type == ColumnType::kInterval) {
        double lo = g.lower();
        for (const auto& cell : col.cells) lo = std::min(lo, std::get<Interval>(cell).lo);
        g = g.with_domain(lo, g.upper());
      }
      grids.push_back(std::move(g));
    } catch (const Error& e) {
      throw Error(e.code(), "column " + col.name + ": " + e.what());
    }
  }
  return grids;
}

std::vector<Interval> intervalize(std::span<const double> points, const ThresholdGrid& grid,
                                  std::uint64_t seed, std::uint64_t stream) {
  const double dm = grid.lower();
  const double dM = grid.upper();
  const double half = (dM - dm) / 2.0;
  std::vector<Interval> out;
  out.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double y = points[i];
    SplitMix64 rng(derive_seed(seed, stream, i));
    const double w = rng.uniform() * half;
    Interval iv{std::max(dm, y - w), std::min(dM, y + w)};
    if (!(iv.hi > iv.lo)) iv = point_interval(y, grid);
    out.push_back(iv);
  }
  return out;
}

RawDataset widen(const RawDataset& raw, std::span<const ThresholdGrid> grids, std::uint64_t seed) {
  if (grids.size() != raw.columns.size())
    throw Error(ErrorCode::kGridMismatch, "one grid per column is needed");
  RawDataset out = raw;
  for (std::size_t c = 0; c < out.columns.size(); ++c) {
    Column& col = out.columns[c];
    if (col.type != ColumnType::kPoint)
      throw Error(ErrorCode::kInvalidArgument, "column " + col.name + " is not point-valued");
    std::vector<double> ys;
    for (const auto& cell : col.cells) ys.push_back(std::get<double>(cell));
    const auto ivs = intervalize(ys, grids[c], seed, c);
    col.type = ColumnType::kInterval;
    col.cells.assign(ivs.begin(), ivs.end());
  }
  return out;
}

RawDataset midpoints(const RawDataset& raw) {
  RawDataset out = raw;
  for (Column& col : out.columns) {
    if (col.type != ColumnType::kInterval) continue;
    col.type = ColumnType::kPoint;
    for (auto& cell : col.cells) {
      const Interval iv = std::get<Interval>(cell);
      cell = (iv.lo + iv.hi) / 2.0;
    }
  }
  return out;
}

double sigma_max_for_range(double zmin, double zmax) {
  if (!(zmax > zmin)) throw Error(ErrorCode::kInvalidArgument, "constant column has no noise scale");
  return (zmax - zmin) / (2.0 * normal_quantile(0.9));
}

Measurement simulate_measurement(std::span<const double> z, const NoiseConfig& cfg, std::uint64_t stream) {
  if (!(cfg.sigma_reduction > 0.0)) throw Error(ErrorCode::kInvalidArgument, "reduction factor must be positive");
  if (z.empty()) return {};
  const auto [lo, hi] = std::minmax_element(z.begin(), z.end());
  const double sigma_cap = sigma_max_for_range(*lo, *hi) / cfg.sigma_reduction;
  Measurement m;
  for (std::size_t i = 0; i < z.size(); ++i) {
    // Stream 0 holds the shared sigma draws; columns use 2c+1 and 2c+2.
    const std::uint64_t sigma_stream = cfg.shared_draw ? 0 : 2 * stream + 1;
    const double u = SplitMix64(derive_seed(cfg.seed, sigma_stream, i)).uniform();
    const double sigma = (1.0 - u) * sigma_cap;  // ]0, cap]
    const double v = z[i] + sigma * normal_quantile(open_uniform(derive_seed(cfg.seed, 2 * stream + 2, i)));
    m.observed.push_back(v);
    m.distributions.push_back(Cdf::normal(v, sigma));
    m.sigmas.push_back(sigma);
  }
  return m;
}

Simulation simulate(const RawDataset& raw, const NoiseConfig& cfg) {
  Simulation sim;
  sim.observed.labels = raw.labels;
  sim.distributions.labels = raw.labels;
  for (std::size_t c = 0; c < raw.columns.size(); ++c) {
    const Column& col = raw.columns[c];
    if (col.type != ColumnType::kPoint)
      throw Error(ErrorCode::kInvalidArgument, "column " + col.name + " is not point-valued");
    std::vector<double> z;
    for (const auto& cell : col.cells) z.push_back(std::get<double>(cell));
    Measurement m;
    try {
      m = simulate_measurement(z, cfg, c);
    } catch (const Error& e) {
      throw Error(e.code(), "column " + col.name + ": " + e.what());
    }
    Column o{col.name, ColumnType::kPoint, col.epsilon, {}};
    Column d{col.name, ColumnType::kDistribution, col.epsilon, {}};
    o.cells.assign(m.observed.begin(), m.observed.end());
    d.cells.assign(m.distributions.begin(), m.distributions.end());
    sim.observed.columns.push_back(std::move(o));
    sim.distributions.columns.push_back(std::move(d));
  }
  return sim;
}

std::string dataset_name(std::string_view base, Language lang, std::size_t k,
                         std::span<const double> alphas) {
  std::string name = std::string(base) + "_" + std::string(to_string(lang)) + std::to_string(k);
  for (std::size_t i = 0; i < alphas.size(); ++i) name += (i ? "-" : "_") + format_number(alphas[i]);
  return name;
}

std::vector<VariableSpec> variable_specs(const RawDataset& raw, std::span<const ThresholdGrid> grids,
                                         const DatasetRequest& request) {
  if (grids.size() != raw.columns.size())
    throw Error(ErrorCode::kGridMismatch, "one grid per column is needed");
  std::vector<VariableSpec> specs;
  for (std::size_t c = 0; c < raw.columns.size(); ++c) {
    const Column& col = raw.columns[c];
    VariableSpec spec{col.name, request.language, grids[c], {}};
    if (col.type == ColumnType::kDistribution) {
      if (request.alphas.empty())
        throw Error(ErrorCode::kInvalidArgument, "column " + col.name + " holds distributions; an alpha level is needed");
      spec.alphas = request.alphas;
      spec.grid = grids[c].with_domain(-std::numeric_limits<double>::infinity(),
                                       std::numeric_limits<double>::infinity());
    }
    specs.push_back(std::move(spec));
  }
  return specs;
}

EncodedDataset encode_raw(const RawDataset& raw, std::vector<VariableSpec> specs) {
  ItemVocabulary voc(std::move(specs));
  std::vector<EncodedObject> objects;
  const std::size_t n = raw.rows();
  objects.reserve(n);
  std::vector<CellValue> row(raw.columns.size());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < raw.columns.size(); ++c) row[c] = raw.columns[c].cells[r];
    EncodedObject obj;
    obj.id = r;
    try {
      obj.items = encode_object(row, voc);
    } catch (const Error& e) {
      throw Error(e.code(), "object " + std::to_string(r + 1) + ": " + e.what());
    }
    if (raw.has_labels()) obj.label = raw.labels[r];
    objects.push_back(std::move(obj));
  }
  return EncodedDataset(std::move(voc), std::move(objects));
}

std::vector<NamedDataset> build_datasets(const RawDataset& raw, std::span<const ThresholdGrid> grids,
                                         std::span<const DatasetRequest> requests,
                                         std::string_view base) {
  std::vector<NamedDataset> out;
  const std::size_t k = grids.empty() ? 0 : grids.front().k();
  for (const auto& request : requests) {
    const bool distributional = std::any_of(raw.columns.begin(), raw.columns.end(), [](const Column& c) {
      return c.type == ColumnType::kDistribution;
    });
    const std::span<const double> alphas = distributional ? std::span<const double>(request.alphas)
                                                          : std::span<const double>();
    out.push_back({dataset_name(base, request.language, k, alphas),
                   encode_raw(raw, variable_specs(raw, grids, request))});
  }
  return out;
}

}  // namespace ivmine
