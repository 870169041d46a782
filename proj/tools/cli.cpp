#include "cli.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "onion/datagen.hpp"
#include "onion/detector.hpp"
#include "onion/error.hpp"
#include "onion/eval.hpp"
#include "onion/geometry.hpp"
#include "onion/serialization.hpp"
#include "onion/svg.hpp"

namespace onion::cli {
namespace {

[[noreturn]] void usage_error(const std::string& message) {
  throw Error(ErrorCode::InvalidParameter, message);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view text, const std::string& what) {
  text = trim(text);
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    usage_error(what + ": '" + std::string(text) + "' is not a valid number");
  }
  return value;
}

Point2 parse_pair(std::string_view text, const std::string& what) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) usage_error(what + " expects two values as 'a,b'");
  return {parse_number<double>(text.substr(0, comma), what),
          parse_number<double>(text.substr(comma + 1), what)};
}

bool parse_bool(std::string_view text, const std::string& what) {
  text = trim(text);
  if (text == "true" || text == "yes" || text == "1") return true;
  if (text == "false" || text == "no" || text == "0") return false;
  usage_error(what + ": expected true or false");
}

std::vector<std::uint64_t> parse_seeds(std::string_view text) {
  text = trim(text);
  std::vector<std::uint64_t> seeds;
  if (const auto dots = text.find(".."); dots != std::string_view::npos) {
    const auto first = parse_number<std::uint64_t>(text.substr(0, dots), "seeds");
    const auto last = parse_number<std::uint64_t>(text.substr(dots + 2), "seeds");
    if (last < first) usage_error("seeds: empty range");
    for (std::uint64_t s = first; s <= last; ++s) seeds.push_back(s);
    return seeds;
  }
  while (!text.empty()) {
    const auto comma = text.find(',');
    seeds.push_back(parse_number<std::uint64_t>(text.substr(0, comma), "seeds"));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (seeds.empty()) usage_error("seeds: no values");
  return seeds;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw Error(ErrorCode::Io, "failed writing '" + path + "'");
}

// An explicit --format must agree with a recognizable -o extension.
DataFormat resolve_format(const std::string& format, const std::string& path,
                          DataFormat fallback) {
  const DataFormat from_path = path.empty() ? fallback : format_from_path(path, fallback);
  if (format.empty()) return from_path;
  const DataFormat chosen = parse_data_format(format);
  if (!path.empty() && format_from_path(path, chosen) != chosen) {
    usage_error("--format " + format + " conflicts with output path '" + path + "'");
  }
  return chosen;
}

DataSet load_input(const std::string& path) {
  return load_points(path, format_from_path(path, DataFormat::Csv));
}

std::string dataset_text(const DataSet& ds, DataFormat format) {
  std::ostringstream out;
  if (format == DataFormat::Csv) {
    write_points_csv(ds, out);
  } else {
    write_points_json(ds, out);
  }
  return out.str();
}

bool partition_holds(const PeelDecomposition& peel, std::size_t n) {
  std::vector<int> seen(n, 0);
  auto mark = [&](std::size_t id) {
    if (id >= n) return false;
    return ++seen[id] == 1;
  };
  for (const Hull& layer : peel.layers) {
    for (std::size_t id : layer.vertex_ids) {
      if (!mark(id)) return false;
    }
    for (std::size_t id : layer.coincident_ids) {
      if (!mark(id)) return false;
    }
  }
  for (std::size_t id : peel.residual_ids) {
    if (!mark(id)) return false;
  }
  return std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; });
}

struct GenerateArgs {
  std::size_t n = 1500;
  std::string mean = "0,0";
  std::string var = "1,100";
  double contamination = 0.01;
  double multiplier = 4.0;
  std::uint64_t seed = 42;
  std::string output;
  std::string format;
};

int cmd_generate(const GenerateArgs& args, std::ostream& out) {
  GenSpec spec;
  spec.n = args.n;
  spec.mean = parse_pair(args.mean, "--mean");
  const Point2 var = parse_pair(args.var, "--var");
  spec.variances = {var.x, var.y};
  spec.contamination = args.contamination;
  spec.outlier_radius_multiplier = args.multiplier;
  spec.seed = args.seed;
  const DataFormat format = resolve_format(args.format, args.output, DataFormat::Csv);

  const DataSet ds = generate(spec);
  if (args.output.empty()) {
    out << dataset_text(ds, format);
    return 0;
  }
  write_file(args.output, dataset_text(ds, format));
  out << "generated n=" << ds.size() << " planted=" << ds.truth_outlier_ids.size()
      << " contamination=" << format_double(spec.contamination) << " seed=" << spec.seed
      << " -> " << args.output << '\n';
  return 0;
}

struct PeelArgs {
  std::string input;
  std::string output;
  std::string format;
  std::string svg;
  bool verify = false;
};

int cmd_peel(const PeelArgs& args, std::ostream& out) {
  const DataFormat format = resolve_format(args.format, args.output, DataFormat::Json);
  const DataSet ds = load_input(args.input);
  const PeelDecomposition peel = onion_peel(ds.points);
  if (peel.layers.empty()) {
    throw Error(ErrorCode::DegenerateInput,
                "points are collinear or have fewer than 3 distinct positions; no hull layer");
  }

  out << "layer,vertices,area\n";
  for (std::size_t i = 0; i < peel.layers.size(); ++i) {
    out << i << ',' << peel.layers[i].size() << ',' << format_double(peel.layers[i].area) << '\n';
  }
  out << "residual," << peel.residual_ids.size() << ",\n";

  if (!args.output.empty()) {
    if (format == DataFormat::Json) {
      write_file(args.output, peel_to_json(peel));
    } else {
      std::ostringstream csv;
      csv << "point_id,layer\n";
      const auto depth = peel_depths(peel, ds.size());
      for (std::size_t i = 0; i < depth.size(); ++i) csv << i << ',' << depth[i] << '\n';
      write_file(args.output, csv.str());
    }
  }
  if (!args.svg.empty()) write_file(args.svg, render_svg(ds.points, {}, peel.layers));
  if (args.verify) {
    const bool ok = partition_holds(peel, ds.size());
    out << "partition check: " << (ok ? "PASS" : "FAIL") << '\n';
    if (!ok) throw Error(ErrorCode::Internal, "peel layers do not partition the input");
  }
  return 0;
}

struct DetectArgs {
  std::string input;
  std::size_t k = 0;
  std::string metric = "euclidean";
  std::string scoring = "sum";
  std::string removal = "point";
  bool standardize = false;
  std::string output;
  std::string format;
  std::string ids_csv;
  std::string svg;
  bool rings = false;
};

int cmd_detect(const DetectArgs& args, std::ostream& out) {
  DetectionConfig config;
  config.k = args.k;
  config.metric = parse_metric_kind(args.metric);
  config.scoring = parse_scoring(args.scoring);
  config.removal = parse_removal(args.removal);
  config.standardize_first = args.standardize;
  const DataFormat format = resolve_format(args.format, args.output, DataFormat::Json);

  const DataSet ds = load_input(args.input);
  const OutlierReport report = detect(ds.points, config);

  out << "rank,point_id,score\n";
  for (std::size_t i = 0; i < report.outlier_ids.size(); ++i) {
    out << i << ',' << report.outlier_ids[i] << ',' << format_double(report.scores[i]) << '\n';
  }
  if (report.early_termination) {
    out << "early termination: survivors stopped forming a hull after "
        << report.outlier_ids.size() << " outliers\n";
  }

  if (!args.output.empty()) {
    write_file(args.output,
               format == DataFormat::Json ? report_to_json(report) : report_to_csv(report));
  }
  if (!args.ids_csv.empty()) write_file(args.ids_csv, report_to_csv(report));
  if (!args.svg.empty()) {
    std::vector<Hull> rings;
    if (args.rings) rings = onion_peel(ds.points).layers;
    write_file(args.svg, render_svg(ds.points, report.outlier_ids, rings));
  }
  return 0;
}

struct EvalArgs {
  std::string config;
  std::string output;
  std::string format;
  std::optional<std::size_t> runs;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
};

int cmd_eval(const EvalArgs& args, std::ostream& out) {
  EvalConfig config = args.config.empty() ? parse_eval_config("")
                                          : parse_eval_config(read_file(args.config));
  if (args.runs || args.seed) {
    const std::size_t runs = args.runs.value_or(config.seeds.size());
    const std::uint64_t first = args.seed.value_or(config.seeds.empty() ? 1 : config.seeds.front());
    if (runs == 0) usage_error("--runs must be positive");
    config.seeds.clear();
    for (std::size_t i = 0; i < runs; ++i) config.seeds.push_back(first + i);
  }
  if (args.threads) config.threads = *args.threads;
  const DataFormat format = resolve_format(args.format, args.output, DataFormat::Json);

  const RunMatrix matrix = run_experiment(config.spec, config.scenarios, config.seeds,
                                          config.threads);
  const ExperimentSummary summary = summarize(matrix);
  out << format_summary_text(summary);
  if (!args.output.empty()) {
    write_file(args.output, format == DataFormat::Json ? summary_to_json(summary)
                                                       : format_summary_csv(summary));
  }
  return 0;
}

}  // namespace

EvalConfig parse_eval_config(const std::string& text) {
  EvalConfig config;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  Scenario* current = nullptr;

  auto fail = [&](const std::string& what) -> void {
    throw Error(ErrorCode::Parse, "config line " + std::to_string(line) + ": " + what);
  };

  while (std::getline(in, raw)) {
    ++line;
    std::string_view view = raw;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) fail("expected 'key = value'");
    const std::string key(trim(view.substr(0, eq)));
    const std::string value(trim(view.substr(eq + 1)));
    if (value.empty()) fail("missing value for '" + key + "'");

    try {
      if (key == "scenario") {
        config.scenarios.push_back({value, DetectionConfig{}});
        current = &config.scenarios.back();
      } else if (current && key == "metric") {
        current->config.metric = parse_metric_kind(value);
      } else if (current && key == "scoring") {
        current->config.scoring = parse_scoring(value);
      } else if (current && key == "removal") {
        current->config.removal = parse_removal(value);
      } else if (current && key == "standardize") {
        current->config.standardize_first = parse_bool(value, key);
      } else if (current) {
        fail("'" + key + "' is not a scenario key (global keys go before the first scenario)");
      } else if (key == "n") {
        config.spec.n = parse_number<std::size_t>(value, key);
      } else if (key == "mean") {
        config.spec.mean = parse_pair(value, key);
      } else if (key == "var" || key == "variances") {
        const Point2 v = parse_pair(value, key);
        config.spec.variances = {v.x, v.y};
      } else if (key == "contamination") {
        config.spec.contamination = parse_number<double>(value, key);
      } else if (key == "multiplier") {
        config.spec.outlier_radius_multiplier = parse_number<double>(value, key);
      } else if (key == "k") {
        config.k = parse_number<std::size_t>(value, key);
      } else if (key == "seeds") {
        config.seeds = parse_seeds(value);
      } else if (key == "threads") {
        config.threads = parse_number<unsigned>(value, key);
      } else {
        fail("unknown key '" + key + "'");
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Parse) throw;
      fail(e.what());
    }
  }

  if (config.seeds.empty()) {
    for (std::uint64_t s = 1; s <= 10; ++s) config.seeds.push_back(s);
  }
  if (config.scenarios.empty()) {
    config.scenarios = default_scenarios(config.k);
  } else {
    for (Scenario& s : config.scenarios) s.config.k = config.k;
  }
  validate(config.spec);
  return config;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Onion-peeling outlier detection for 2-D point sets", "onion"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate_cmd = app.add_subcommand("generate", "Write a synthetic Gaussian dataset");
  generate_cmd->add_option("--n", gen.n, "Number of points")->capture_default_str();
  generate_cmd->add_option("--mean", gen.mean, "Mean as x,y")->capture_default_str();
  generate_cmd->add_option("--var", gen.var, "Per-dimension variances as vx,vy")
      ->capture_default_str();
  generate_cmd->add_option("--contamination", gen.contamination, "Planted outlier fraction")
      ->capture_default_str();
  generate_cmd->add_option("--multiplier", gen.multiplier,
                           "Minimum Mahalanobis radius of planted outliers")
      ->capture_default_str();
  generate_cmd->add_option("--seed", gen.seed, "RNG seed")->capture_default_str();
  generate_cmd->add_option("-o,--output", gen.output, "Output path (stdout when omitted)");
  generate_cmd->add_option("--format", gen.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  PeelArgs peel;
  auto* peel_cmd = app.add_subcommand("peel", "Convex layers of a dataset");
  peel_cmd->add_option("input", peel.input, "Dataset (.csv or .json)")->required();
  peel_cmd->add_option("-o,--output", peel.output, "Layer file");
  peel_cmd->add_option("--format", peel.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  peel_cmd->add_option("--svg", peel.svg, "Draw the nested rings");
  peel_cmd->add_flag("--verify", peel.verify, "Check that the layers partition the input");

  DetectArgs det;
  auto* detect_cmd = app.add_subcommand("detect", "Top-k outliers by iterative hull peeling");
  detect_cmd->add_option("input", det.input, "Dataset (.csv or .json)")->required();
  detect_cmd->add_option("--k", det.k, "Outlier budget")->required();
  detect_cmd->add_option("--metric", det.metric, "euclidean, std-euclidean or mahalanobis")
      ->check(CLI::IsMember({"euclidean", "std-euclidean", "mahalanobis"}))
      ->capture_default_str();
  detect_cmd->add_option("--scoring", det.scoring, "sum or center")
      ->check(CLI::IsMember({"sum", "center"}))
      ->capture_default_str();
  detect_cmd->add_option("--removal", det.removal, "point or hull")
      ->check(CLI::IsMember({"point", "hull"}))
      ->capture_default_str();
  detect_cmd->add_flag("--standardize", det.standardize, "Standardize before peeling");
  detect_cmd->add_option("-o,--output", det.output, "Report path");
  detect_cmd->add_option("--format", det.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  detect_cmd->add_option("--ids-csv", det.ids_csv, "Also write the ranked ids as CSV");
  detect_cmd->add_option("--svg", det.svg, "Scatter plot with outliers marked");
  detect_cmd->add_flag("--rings", det.rings, "Overlay convex layers on the plot");

  EvalArgs ev;
  auto* eval_cmd = app.add_subcommand("eval", "Run the scenario x seed experiment matrix");
  eval_cmd->add_option("config", ev.config, "Experiment config (defaults when omitted)");
  eval_cmd->add_option("-o,--output", ev.output, "Summary path");
  eval_cmd->add_option("--format", ev.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  eval_cmd->add_option("--runs", ev.runs, "Number of seeds, overriding the config");
  eval_cmd->add_option("--seed", ev.seed, "First seed, overriding the config");
  eval_cmd->add_option("--threads", ev.threads, "Worker threads");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (generate_cmd->parsed()) return cmd_generate(gen, out);
    if (peel_cmd->parsed()) return cmd_peel(peel, out);
    if (detect_cmd->parsed()) return cmd_detect(det, out);
    if (eval_cmd->parsed()) return cmd_eval(ev, out);
  } catch (const Error& e) {
    err << "onion: " << e.what() << '\n';
    return e.code() == ErrorCode::Internal ? 1 : 2;
  } catch (const std::exception& e) {
    err << "onion: internal error: " << e.what() << '\n';
    return 1;
  }
  err << "onion: no subcommand\n";
  return 2;
}

}  // namespace onion::cli
