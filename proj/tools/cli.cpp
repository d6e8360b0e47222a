#include "cli.hpp"

#include <cstdio>
#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "genecon/error.hpp"
#include "genecon/estimate.hpp"
#include "genecon/json_io.hpp"
#include "genecon/parallel.hpp"
#include "genecon/report.hpp"
#include "genecon/rng.hpp"
#include "genecon/simplicity.hpp"
#include "genecon/simulate.hpp"
#include "genecon/spaces.hpp"

namespace genecon::cli {

namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputOptions {
  std::string g_path;
  std::string data_path;
  std::string grid_path;
  std::string measure = "d1";
  std::string design = "halfsib";
  std::optional<double> relatedness;
  double clip_tol = 0.0;
  bool dry_run = false;
};

struct AnalyzeOptions {
  InputOptions in;
  long J = -1;
  std::string out_path;
  std::string svg_path;
};

struct SweepOptions {
  InputOptions in;
  std::string out_dir;
};

struct SimulateOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<long> reps;
  std::optional<long> null_dim;
  std::string out_path;
  std::string svg_path;
  std::string dataset_path;
  bool dry_run = false;
};

void add_input_options(CLI::App& cmd, InputOptions& o) {
  auto* g = cmd.add_option("--g", o.g_path, "G-matrix JSON {\"dim\", \"entries\"}");
  auto* data = cmd.add_option("--data", o.data_path, "family dataset CSV");
  g->excludes(data);
  cmd.add_option("--grid", o.grid_path, "trait grid JSON {\"points\"}")->required();
  cmd.add_option("--measure", o.measure, "simplicity measure")
      ->check(CLI::IsMember({"d1", "d2", "sparse"}))
      ->capture_default_str();
  cmd.add_option("--design", o.design, "breeding design of --data")
      ->check(CLI::IsMember({"halfsib", "fullsib"}))
      ->capture_default_str();
  cmd.add_option("--c", o.relatedness, "override the relatedness multiplier")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--clip-tol", o.clip_tol, "clip eigenvalues below this value")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd.add_flag("--dry-run", o.dry_run, "validate inputs without computing");
}

void require_one_input(const InputOptions& o) {
  if (o.g_path.empty() == o.data_path.empty()) {
    throw UsageError("exactly one of --g or --data is required");
  }
}

// Errors raised while reading an input are reported against that input.
template <class F>
auto with_context(const std::string& what, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Io) throw;
    throw Error(e.code(), what + ": " + e.detail());
  }
}

TraitGrid load_grid(const std::string& path) {
  return with_context(path, [&] { return grid_from_json(read_json_file(path)); });
}

unsigned threads_from_env() {
  try {
    return thread_count_from_env();
  } catch (const Error& e) {
    throw UsageError(e.detail());
  }
}

struct LoadedInputs {
  TraitGrid grid;
  GMatrix g;
  Provenance provenance;
};

LoadedInputs load_inputs(const InputOptions& o) {
  TraitGrid grid = load_grid(o.grid_path);
  Provenance prov;
  prov.clip_tolerance = o.clip_tol;
  prov.measure_kind = std::string(to_string(parse_measure_kind(o.measure)));
  prov.inputs["grid"] = o.grid_path;

  if (!o.g_path.empty()) {
    prov.inputs["g_matrix"] = o.g_path;
    GMatrix g = ingest_gmatrix_file(o.g_path, grid, o.clip_tol);
    return {std::move(grid), std::move(g), std::move(prov)};
  }

  const Design design = parse_design(o.design);
  prov.inputs["data"] = o.data_path;
  prov.design = std::string(to_string(design));
  const FamilyDataset data = read_dataset_csv(o.data_path, grid, design, o.relatedness);
  prov.relatedness = data.relatedness();
  prov.notes["families"] = data.family_count();
  prov.notes["family_size"] = data.family_size();
  VarianceComponents vc = anova_estimate(data, o.clip_tol);
  return {std::move(grid), std::move(vc.g_hat), std::move(prov)};
}

std::string figure_title(Index J, Index k) {
  return "Model space J = " + std::to_string(J) + ", nearly null space " + std::to_string(k - J);
}

std::string render_figure(const SubspacePartition& part, const LoadedInputs& in,
                          const SimplicityMeasure& m, const Json& provenance) {
  FigureSpec spec{.partition = part, .grid = in.grid, .title = figure_title(part.J, part.dim())};
  spec.score_upper_bound = m.score_upper_bound();
  spec.provenance = provenance;
  return render_partition_figure(spec);
}

int analyze(const AnalyzeOptions& o, std::ostream& out) {
  require_one_input(o.in);
  LoadedInputs in = load_inputs(o.in);
  const Index k = in.grid.size();
  if (o.J > k) {
    throw UsageError("--J must lie in [0, " + std::to_string(k) + "], got " +
                     std::to_string(o.J));
  }
  const SimplicityMeasure m = make_measure(parse_measure_kind(o.in.measure), in.grid);
  if (o.in.dry_run) {
    out << "dry run: inputs valid (K = " << k << ", J = " << o.J << ")\n";
    return 0;
  }

  const SubspacePartition part = partition(in.g, static_cast<Index>(o.J), m);
  const Json report = partition_report(part, in.g, m, in.provenance);
  const std::string text = dump_report(report);
  if (o.out_path.empty()) {
    out << text;
  } else {
    write_file_atomic(o.out_path, text);
  }
  if (!o.svg_path.empty()) {
    write_file_atomic(o.svg_path, render_figure(part, in, m, report["provenance"]));
  }
  return 0;
}

std::string padded(Index value, Index max_value) {
  const std::size_t width = std::max<std::size_t>(2, std::to_string(max_value).size());
  std::string s = std::to_string(value);
  s.insert(0, width - std::min(width, s.size()), '0');
  return s;
}

int sweep(const SweepOptions& o, std::ostream& out) {
  require_one_input(o.in);
  const unsigned threads = threads_from_env();
  LoadedInputs in = load_inputs(o.in);
  const Index k = in.grid.size();
  const SimplicityMeasure m = make_measure(parse_measure_kind(o.in.measure), in.grid);
  if (o.in.dry_run) {
    out << "dry run: inputs valid (K = " << k << ", " << k + 1 << " partitions)\n";
    return 0;
  }

  std::error_code ec;
  fs::create_directories(o.out_dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + o.out_dir + ": " + ec.message());

  const auto parts = sweep_partitions(in.g, m, threads);
  for (const auto& part : parts) {
    const Json report = partition_report(part, in.g, m, in.provenance);
    const std::string tag = "J" + padded(part.J, k);
    write_file_atomic(fs::path(o.out_dir) / ("report_" + tag + ".json"), dump_report(report));
    write_file_atomic(fs::path(o.out_dir) / ("figure_" + tag + ".svg"),
                      render_figure(part, in, m, report["provenance"]));
  }
  out << "wrote " << parts.size() << " reports and figures to " << o.out_dir << "\n";
  return 0;
}

template <class T>
T config_value(const Json& cfg, const char* key, const std::string& path) {
  if (!cfg.contains(key)) throw UsageError(path + ": missing \"" + key + "\"");
  try {
    return cfg.at(key).get<T>();
  } catch (const Json::exception&) {
    throw UsageError(path + ": \"" + key + "\" has the wrong type");
  }
}

struct StudyConfig {
  SimulationParams params;
  long reps = 0;
  long null_dim = 0;
  MeasureKind measure = MeasureKind::FirstDifference;
};

StudyConfig load_study(const SimulateOptions& o) {
  const std::string& path = o.config_path;
  const Json cfg = read_json_file(path);
  if (!cfg.is_object()) throw UsageError(path + ": config must be a JSON object");

  return with_context(path, [&] {
    const Json& grid_json = cfg.contains("grid") ? cfg["grid"] : Json();
    TraitGrid grid = grid_json.is_array() ? TraitGrid(grid_json.get<std::vector<double>>())
                                          : grid_from_json(grid_json);
    const Index k = grid.size();
    if (!cfg.contains("G")) throw UsageError(path + ": missing \"G\"");

    StudyConfig sc{.params = SimulationParams{
                       .grid = grid,
                       .mu = cfg.contains("mu") ? vector_from_json(cfg["mu"]) : Vector::Zero(k),
                       .g = simulation_covariance(matrix_from_json(cfg["G"])),
                       .e = cfg.contains("E") ? matrix_from_json(cfg["E"]) : SymMatrix::zero(k),
                   }};
    SimulationParams& p = sc.params;
    p.g = p.g.with_grid(grid);
    if (cfg.contains("sigma2")) p.sigma2 = config_value<double>(cfg, "sigma2", path);
    if (cfg.contains("N_f")) p.families = config_value<long>(cfg, "N_f", path);
    if (cfg.contains("n")) p.family_size = config_value<long>(cfg, "n", path);
    if (cfg.contains("design")) p.design = parse_design(config_value<std::string>(cfg, "design", path));
    if (cfg.contains("seed")) p.seed = config_value<std::uint64_t>(cfg, "seed", path);
    sc.reps = cfg.contains("reps") ? config_value<long>(cfg, "reps", path) : 200;
    sc.null_dim = cfg.contains("null_dim") ? config_value<long>(cfg, "null_dim", path) : 3;
    if (cfg.contains("measure")) {
      sc.measure = parse_measure_kind(config_value<std::string>(cfg, "measure", path));
    }

    if (o.seed) p.seed = *o.seed;
    if (o.reps) sc.reps = *o.reps;
    if (o.null_dim) sc.null_dim = *o.null_dim;
    if (sc.reps < 1) throw UsageError("reps must be at least 1, got " + std::to_string(sc.reps));
    if (sc.null_dim < 1 || sc.null_dim > k - 1) {
      throw UsageError("null_dim must lie in [1, " + std::to_string(k - 1) + "], got " +
                       std::to_string(sc.null_dim));
    }
    if (sc.measure == MeasureKind::Custom) {
      throw UsageError(path + ": \"measure\" must be d1, d2 or sparse");
    }
    p.validate();
    return sc;
  });
}

std::string aggregate_line(const StudySummary& s) {
  char buf[512];
  const SummaryStat& pc = s.null_pc_response.front();
  std::snprintf(buf, sizeof buf,
                "simplest null vector response %.4g (sd %.4g); PC%ld response %.4g (sd %.4g); "
                "negative smallest eigenvalue in %ld/%ld replicates; canonical distance %.4g",
                s.simplest_response.mean, s.simplest_response.sd, static_cast<long>(s.J + 1),
                pc.mean, pc.sd,
                static_cast<long>(s.negative_fraction * static_cast<double>(s.reps) + 0.5),
                static_cast<long>(s.reps), s.canonical_distance.mean);
  return buf;
}

int simulate(const SimulateOptions& o, std::ostream& out) {
  const unsigned threads = threads_from_env();
  const StudyConfig sc = load_study(o);
  const SimulationParams& p = sc.params;
  if (o.dry_run) {
    out << "dry run: config valid (K = " << p.grid.size() << ", reps = " << sc.reps
        << ", null_dim = " << sc.null_dim << ")\n";
    return 0;
  }

  const SimplicityMeasure m = make_measure(sc.measure, p.grid);
  const StudySummary summary = run_study(p, sc.reps, sc.null_dim, m, threads);

  Provenance prov;
  prov.inputs["config"] = o.config_path;
  prov.seed = p.seed;
  prov.measure_kind = std::string(to_string(sc.measure));
  prov.design = std::string(to_string(p.design));
  prov.relatedness = relatedness_coefficient(p.design);
  const Json report = study_report(summary, prov);

  if (!o.out_path.empty()) write_file_atomic(o.out_path, dump_report(report));
  if (!o.svg_path.empty()) {
    StudyFigureSpec spec;
    spec.title = "Simulation study, " + std::to_string(sc.reps) + " replicates";
    spec.provenance = report["provenance"];
    write_file_atomic(o.svg_path, render_study_figure(summary, spec));
  }
  if (!o.dataset_path.empty()) {
    std::ostringstream csv;
    write_dataset_csv(csv, generate_dataset(p, CounterRng::derive(p.seed, {0})));
    write_file_atomic(o.dataset_path, csv.str());
  }
  out << aggregate_line(summary) << "\n";
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Model space / nearly null space analysis of genetic covariance matrices",
               "genecon"};
  app.set_version_flag("--version", std::string(software_version()));
  app.require_subcommand(1);

  AnalyzeOptions analyze_opts;
  auto* analyze_cmd = app.add_subcommand("analyze", "partition G at one J and report");
  add_input_options(*analyze_cmd, analyze_opts.in);
  analyze_cmd->add_option("--J", analyze_opts.J, "model space dimension")
      ->required()
      ->check(CLI::NonNegativeNumber);
  analyze_cmd->add_option("--out", analyze_opts.out_path, "JSON report (default: stdout)");
  analyze_cmd->add_option("--svg", analyze_opts.svg_path, "SVG figure");

  SweepOptions sweep_opts;
  auto* sweep_cmd = app.add_subcommand("sweep", "report every J from 0 to K");
  add_input_options(*sweep_cmd, sweep_opts.in);
  sweep_cmd->add_option("--out-dir", sweep_opts.out_dir, "output directory")->required();

  SimulateOptions sim_opts;
  auto* sim_cmd = app.add_subcommand("simulate", "run the replicated half-sib simulation study");
  sim_cmd->add_option("--config", sim_opts.config_path, "study JSON")->required();
  sim_cmd->add_option("--seed", sim_opts.seed, "override the seed");
  sim_cmd->add_option("--reps", sim_opts.reps, "override the replicate count")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--null-dim", sim_opts.null_dim, "override the nearly null dimension")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--out", sim_opts.out_path, "summary JSON");
  sim_cmd->add_option("--svg", sim_opts.svg_path, "study SVG");
  sim_cmd->add_option("--dataset-csv", sim_opts.dataset_path, "write replicate 0's dataset");
  sim_cmd->add_flag("--dry-run", sim_opts.dry_run, "validate the config without computing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*analyze_cmd) return analyze(analyze_opts, out);
    if (*sweep_cmd) return sweep(sweep_opts, out);
    return simulate(sim_opts, out);
  } catch (const UsageError& e) {
    err << "genecon: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "genecon: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "genecon: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace genecon::cli
