// ivmine: encode interval/distribution data, mine closed patterns, evaluate.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ivmine/error.hpp"
#include "ivmine/fimi.hpp"
#include "ivmine/ingest.hpp"
#include "ivmine/metrics.hpp"
#include "ivmine/mining.hpp"
#include "ivmine/protocol.hpp"

namespace fs = std::filesystem;
using namespace ivmine;

namespace {

// Usage / validation failures exit 2, bad data 3.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kLanguageMismatch:
    case ErrorCode::kGridMismatch:
    case ErrorCode::kGuardExceeded:
      return 2;
    default:
      return 3;
  }
}

void emit(const std::string& out, const std::string& content) {
  if (out.empty() || out == "-") std::cout << content;
  else write_file_atomic(out, content);
}

std::string join_alphas(const std::vector<double>& alphas) {
  std::string s;
  for (std::size_t i = 0; i < alphas.size(); ++i) s += (i ? ";" : "") + format_number(alphas[i]);
  return s;
}

std::vector<ThresholdGrid> grids_from_manifest(const std::string& path, const RawDataset& raw) {
  std::string base = path;
  if (const std::string ext = ".manifest"; base.size() > ext.size() && base.ends_with(ext))
    base.resize(base.size() - ext.size());
  const Manifest m = Manifest::parse(read_file(base + ".manifest"));
  const auto specs = vocabulary_specs(m);
  if (specs.size() != raw.columns.size())
    throw UsageError("grid manifest describes " + std::to_string(specs.size()) + " variables, input has " +
                     std::to_string(raw.columns.size()));
  std::vector<ThresholdGrid> grids;
  for (std::size_t c = 0; c < specs.size(); ++c) {
    if (specs[c].name != raw.columns[c].name)
      throw UsageError("grid manifest variable " + specs[c].name + " does not match column " + raw.columns[c].name);
    grids.push_back(specs[c].grid);
  }
  return grids;
}

Partition classes_of(const EncodedDataset& ds) {
  if (!ds.has_labels()) throw UsageError("missing labels: the dataset has no class column");
  std::vector<std::string> labels;
  for (const auto& o : ds.objects()) labels.push_back(*o.label);
  return Partition::from_labels(labels);
}

std::size_t parse_min_support(const std::string& text, std::size_t n) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size() || !(v > 0.0)) throw UsageError("--min-support expects a count or a fraction in ]0,1]");
  if (text.find_first_of(".eE") != std::string::npos && v <= 1.0) return absolute_min_support(v, n);
  if (v != std::floor(v)) throw UsageError("--min-support expects a count or a fraction in ]0,1]");
  return static_cast<std::size_t>(v);
}

// --- encode ---------------------------------------------------------------

struct EncodeOptions {
  std::string input, lang, out, name, grids, num_source = "original";
  std::size_t bins = 5;
  std::vector<double> alphas;
  std::uint64_t seed = 1;
  bool widen = false;
  double eps = 0.0;
};

int run_encode(const EncodeOptions& o) {
  const Language lang = parse_language(o.lang);
  const NumSource num_source = parse_num_source(o.num_source);
  LoadOptions load;
  if (o.eps > 0.0) load.epsilon = o.eps;
  const std::string text = read_file(o.input);
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) throw UsageError("no objects in " + o.input);
  std::istringstream in(text);
  const RawDataset raw = parse_csv(in, load);
  if (raw.rows() == 0) throw UsageError("no objects in " + o.input);

  const std::vector<ThresholdGrid> grids =
      o.grids.empty() ? equal_width_grids(raw, o.bins) : grids_from_manifest(o.grids, raw);
  const RawDataset view = o.widen ? widened_view(raw, grids, lang, num_source, o.seed) : raw;
  const DatasetRequest request{lang, o.alphas};
  const EncodedDataset ds = encode_raw(view, variable_specs(view, grids, request));

  const bool distributional = std::any_of(view.columns.begin(), view.columns.end(),
                                          [](const Column& c) { return c.type == ColumnType::kDistribution; });
  const std::string stem = o.name.empty() ? fs::path(o.input).stem().string() : o.name;
  const std::string name =
      dataset_name(stem, lang, grids.front().k(), distributional ? std::span<const double>(o.alphas)
                                                                 : std::span<const double>());
  Manifest m;
  m.set("name", name);
  m.set("source", fs::path(o.input).filename().string());
  m.set("language", std::string(to_string(lang)));
  m.set("bins", std::to_string(grids.front().k() + 1));
  m.set("seed", std::to_string(o.seed));
  m.set("alphas", join_alphas(o.alphas));
  m.set("transform", o.widen ? "widen" : "none");
  if (o.widen && lang == Language::kNum) m.set("num_source", o.num_source);
  const fs::path base = fs::path(o.out) / name;
  save_encoded(ds, base, m);
  std::cout << base.string() << "\t" << ds.size() << " objects\t" << ds.vocabulary().size() << " items\n";
  return 0;
}

// --- mine -----------------------------------------------------------------

int run_mine(const std::string& input, const std::string& min_support, bool edges, const std::string& out) {
  const LoadedDataset loaded = load_encoded(input);
  const EncodedDataset& ds = loaded.dataset;
  if (ds.empty()) {
    std::cerr << "warning: dataset has no objects; nothing to mine\n";
    emit(out, concepts_text({}, ds));
    return 0;
  }
  MiningConfig cfg;
  cfg.min_support = parse_min_support(min_support, ds.size());
  if (cfg.min_support > ds.size())
    throw UsageError("min support " + std::to_string(cfg.min_support) + " exceeds the " +
                     std::to_string(ds.size()) + " objects");
  cfg.emit_lattice_edges = edges;
  const MiningResult result = mine_closed(ds, cfg);
  std::string text = concepts_text(result.concepts, ds);
  if (edges) {
    for (const auto& [p, c] : result.edges) text += "#edge\t" + std::to_string(p) + "\t" + std::to_string(c) + "\n";
  }
  emit(out, text);
  std::cerr << result.concepts.size() << " closed patterns with support >= " << cfg.min_support << "\n";
  return 0;
}

// --- interpret ------------------------------------------------------------

int run_interpret(const std::string& input, const std::string& items_text) {
  const LoadedDataset loaded = load_encoded(input);
  const ItemVocabulary& voc = loaded.dataset.vocabulary();
  Bitset items(voc.size());
  std::string s = items_text;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) {
    std::size_t pos = 0;
    unsigned long long id = 0;
    try {
      id = std::stoull(tok, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != tok.size()) throw UsageError("item id '" + tok + "' is not a number");
    if (id >= voc.size()) throw UsageError("item " + tok + " outside the vocabulary of " + std::to_string(voc.size()));
    items.set(id);
  }
  std::string text;
  try {
    text = interpretation_text(items, voc);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidRepresentation) throw UsageError(e.what());
    throw;
  }
  std::cout << text << "\n";
  return 0;
}

// --- eval -----------------------------------------------------------------

struct EvalOptions {
  std::string input, concepts, csv, lang, out, num_source = "original", method = "swap";
  std::size_t bins = 5, trials = 200, k = 0;
  std::uint64_t seed = 1;
  bool widen = false, standardize = false;
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << std::fixed << x;
  return os.str();
}

int run_eval(const EvalOptions& o) {
  ClusteringConfig cc;
  cc.trials = o.trials;
  cc.seed = o.seed;
  cc.method = parse_kmedoids_method(o.method);
  cc.standardize = o.standardize;

  std::string language = "-";
  std::string patterns = "-", cover = "-", mean_support = "-", ds_classes = "-", ds_random = "-";
  TrialSummary clustering;

  if (!o.csv.empty()) {
    if (!o.input.empty()) throw UsageError("--input and --csv are exclusive");
    const RawDataset raw = load_csv(o.csv);
    if (raw.rows() == 0) throw UsageError("no objects in " + o.csv);
    if (!raw.has_labels()) throw UsageError("missing labels: " + o.csv + " has no class column");
    const Partition classes = Partition::from_labels(raw.labels);
    cc.k = o.k ? o.k : classes.size();
    if (o.lang.empty() || o.lang == "ori") {
      language = "ori";
      clustering = cluster_points(raw, classes, cc);
    } else {
      const Language lang = parse_language(o.lang);
      language = std::string(to_string(lang));
      const auto grids = equal_width_grids(raw, o.bins);
      if (o.widen) {
        clustering = cluster_widened(raw, grids, lang, parse_num_source(o.num_source), classes, cc);
      } else {
        clustering = cluster_encoded(encode_raw(raw, variable_specs(raw, grids, {lang, {}})), classes, cc);
      }
    }
  } else {
    if (o.input.empty()) throw UsageError("eval needs --input or --csv");
    const LoadedDataset loaded = load_encoded(o.input);
    const EncodedDataset& ds = loaded.dataset;
    if (ds.empty()) throw UsageError("no objects in " + o.input);
    const Partition classes = classes_of(ds);
    language = loaded.manifest.get("language").value_or("-");
    if (!o.concepts.empty()) {
      const auto concepts = parse_concepts(read_file(o.concepts), ds);
      if (concepts.empty()) throw UsageError("no concepts in " + o.concepts);
      std::vector<Bitset> supports;
      for (const auto& c : concepts) supports.push_back(c.extent);
      const SupportStats st = support_statistics(supports, classes, o.seed);
      patterns = std::to_string(st.patterns);
      cover = std::to_string(st.covering);
      mean_support = fmt(st.mean_support);
      ds_classes = fmt(st.ds_classes);
      ds_random = fmt(st.ds_random);
    }
    cc.k = o.k ? o.k : classes.size();
    if (o.trials > 0) clustering = cluster_encoded(ds, classes, cc);
  }

  std::string report =
      "# F-measure = sum over classes c of |c|/n * max over clusters p of F1(c,p); k-medoids " + o.method +
      ", trial t seeded with seed+t\n"
      "language\tpatterns\tcovering\tmean_support\tds_classes\tds_random\tf_mean\tf_std\ttrials\tseed\n";
  const bool clustered = !clustering.scores.empty();
  report += language + "\t" + patterns + "\t" + cover + "\t" + mean_support + "\t" + ds_classes + "\t" + ds_random +
            "\t" + (clustered ? fmt(clustering.mean) : "-") + "\t" + (clustered ? fmt(clustering.stddev) : "-") +
            "\t" + std::to_string(clustering.scores.size()) + "\t" + std::to_string(o.seed) + "\n";
  emit(o.out, report);
  return 0;
}

// --- simulate -------------------------------------------------------------

struct SimulateOptions {
  std::string input, out, name, lang = "i";
  double r = 1.75;
  std::vector<std::size_t> bins;
  std::vector<double> alphas;
  std::uint64_t seed = 1;
  bool shared_draw = false;
};

int run_simulate(SimulateOptions o) {
  if (o.bins.empty()) o.bins = {5, 9};
  if (o.alphas.empty()) o.alphas = {0.1, 0.25};
  const Language lang = parse_language(o.lang);
  if (lang != Language::kI && lang != Language::kIC) throw UsageError("distribution encodings need --lang i or ic");
  if (!(o.r > 0.0)) throw UsageError("--r must be positive");

  const RawDataset raw = load_csv(o.input);
  if (raw.rows() == 0) throw UsageError("no objects in " + o.input);
  NoiseConfig noise;
  noise.sigma_reduction = o.r;
  noise.seed = o.seed;
  noise.shared_draw = o.shared_draw;
  const Simulation sim = simulate(raw, noise);

  const std::string stem = o.name.empty() ? fs::path(o.input).stem().string() : o.name;
  const fs::path dir(o.out);
  write_file_atomic(dir / (stem + "O.csv"), to_csv(sim.observed));
  write_file_atomic(dir / (stem + "OD.csv"), to_csv(sim.distributions));

  auto save = [&](const RawDataset& data, const std::vector<ThresholdGrid>& grids, const DatasetRequest& req,
                  const std::string& base, std::span<const double> alphas, std::size_t bins) {
    const EncodedDataset ds = encode_raw(data, variable_specs(data, grids, req));
    const std::string name = dataset_name(base, req.language, grids.front().k(), alphas);
    Manifest m;
    m.set("name", name);
    m.set("source", fs::path(o.input).filename().string());
    m.set("language", std::string(to_string(req.language)));
    m.set("bins", std::to_string(bins));
    m.set("seed", std::to_string(o.seed));
    m.set("alphas", join_alphas(req.alphas));
    m.set("transform", "simulate");
    m.set("sigma_reduction", format_number(o.r));
    m.set("shared_draw", o.shared_draw ? "1" : "0");
    save_encoded(ds, dir / name, m);
    std::cout << (dir / name).string() << "\t" << ds.size() << " objects\t" << ds.vocabulary().size() << " items\n";
  };

  for (std::size_t bins : o.bins) {
    // Thresholds come from the observed values and are shared by both encodings.
    const auto grids = equal_width_grids(sim.observed, bins);
    save(sim.observed, grids, {Language::kNum, {}}, stem + "O", {}, bins);
    for (std::size_t n = 1; n <= o.alphas.size(); ++n) {
      const std::vector<double> prefix(o.alphas.begin(), o.alphas.begin() + static_cast<std::ptrdiff_t>(n));
      save(sim.distributions, grids, {lang, prefix}, stem + "OD", prefix, bins);
    }
  }
  return 0;
}

// --- distance -------------------------------------------------------------

int run_distance(const std::string& input, const std::string& out) {
  const LoadedDataset loaded = load_encoded(input);
  const EncodedDataset& ds = loaded.dataset;
  const Eigen::MatrixXd d = jaccard_distance_matrix(ds);
  std::ostringstream os;
  os.precision(10);
  os << "object";
  for (const auto& obj : ds.objects()) os << '\t' << obj.id;
  os << '\n';
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    os << ds.objects()[static_cast<std::size_t>(i)].id;
    for (Eigen::Index j = 0; j < d.cols(); ++j) os << '\t' << d(i, j);
    os << '\n';
  }
  emit(out, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Closed pattern mining over interval- and distribution-valued data"};
  app.require_subcommand(1);

  EncodeOptions enc;
  auto* encode = app.add_subcommand("encode", "Encode a CSV dataset as itemsets");
  encode->add_option("--input", enc.input, "Input CSV")->required();
  encode->add_option("--lang", enc.lang, "Pattern language: num, c, i, ic")->required();
  encode->add_option("--bins", enc.bins, "Equal-width bins (thresholds = bins - 1)")->check(CLI::Range(2, 1000));
  encode->add_option("--alpha", enc.alphas, "Alpha level for distribution columns (repeatable)");
  encode->add_option("--seed", enc.seed, "Seed of the widening draws");
  encode->add_flag("--widen", enc.widen, "Replace point values by random intervals around them");
  encode->add_option("--grids", enc.grids, "Reuse the threshold grids of an encoded dataset (manifest base path)");
  encode->add_option("--num-source", enc.num_source, "Num points under --widen: original or midpoint");
  encode->add_option("--eps", enc.eps, "Override the value resolution of every column");
  encode->add_option("--name", enc.name, "Dataset base name (default: input file stem)");
  encode->add_option("--out", enc.out, "Output directory")->required();

  std::string mine_input, mine_support = "1", mine_out;
  bool mine_edges = false;
  auto* mine = app.add_subcommand("mine", "Mine closed patterns of an encoded dataset");
  mine->add_option("--input", mine_input, "Encoded dataset base path")->required();
  mine->add_option("--min-support", mine_support, "Minimum support: count, or fraction in ]0,1]");
  mine->add_flag("--edges", mine_edges, "Append the covering edges of the concept lattice");
  mine->add_option("--out", mine_out, "Concept file (default: stdout)");

  std::string interp_input, interp_items;
  auto* interp = app.add_subcommand("interpret", "State an itemset as interval constraints");
  interp->add_option("--input", interp_input, "Encoded dataset base path")->required();
  interp->add_option("--items", interp_items, "Item ids, space or comma separated")->required();

  EvalOptions ev;
  auto* eval = app.add_subcommand("eval", "Support-set statistics and k-medoids clustering report");
  eval->add_option("--input", ev.input, "Encoded dataset base path");
  eval->add_option("--concepts", ev.concepts, "Concept file written by mine");
  eval->add_option("--csv", ev.csv, "Raw CSV for the original-values or widening protocols");
  eval->add_option("--lang", ev.lang, "With --csv: ori (default), num, c, i or ic");
  eval->add_option("--bins", ev.bins, "With --csv: equal-width bins")->check(CLI::Range(2, 1000));
  eval->add_flag("--widen", ev.widen, "With --csv: re-draw the widening in every trial");
  eval->add_option("--num-source", ev.num_source, "Num points under --widen: original or midpoint");
  eval->add_option("--trials", ev.trials, "Clustering trials (0 skips clustering)");
  eval->add_option("--k", ev.k, "Number of medoids (default: number of classes)");
  eval->add_option("--method", ev.method, "k-medoids variant: swap or alternate");
  eval->add_flag("--standardize", ev.standardize, "Standardize variables before Euclidean clustering");
  eval->add_option("--seed", ev.seed, "Root seed");
  eval->add_option("--out", ev.out, "Report file (default: stdout)");

  SimulateOptions sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Gaussian measurement simulation and encodings");
  simulate_cmd->add_option("--input", sim.input, "Point-valued input CSV")->required();
  simulate_cmd->add_option("--r", sim.r, "Sigma reduction factor");
  simulate_cmd->add_option("--bins", sim.bins, "Equal-width bins (repeatable; default 5 and 9)");
  simulate_cmd->add_option("--alpha", sim.alphas, "Alpha levels; encodings use each prefix (default 0.1 0.25)");
  simulate_cmd->add_option("--lang", sim.lang, "Language of the distribution encodings: i or ic");
  simulate_cmd->add_option("--seed", sim.seed, "Root seed");
  simulate_cmd->add_flag("--shared-draw", sim.shared_draw, "One sigma draw per object for all variables");
  simulate_cmd->add_option("--name", sim.name, "Dataset base name (default: input file stem)");
  simulate_cmd->add_option("--out", sim.out, "Output directory")->required();

  std::string dist_input, dist_out;
  auto* distance = app.add_subcommand("distance", "Pairwise Jaccard distances between encoded objects");
  distance->add_option("--input", dist_input, "Encoded dataset base path")->required();
  distance->add_option("--out", dist_out, "Matrix file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*encode) return run_encode(enc);
    if (*mine) return run_mine(mine_input, mine_support, mine_edges, mine_out);
    if (*interp) return run_interpret(interp_input, interp_items);
    if (*eval) return run_eval(ev);
    if (*simulate_cmd) return run_simulate(sim);
    if (*distance) return run_distance(dist_input, dist_out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
