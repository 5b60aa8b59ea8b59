#include "dgrover/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dgrover/errors.hpp"
#include "dgrover/phase_solver.hpp"
#include "dgrover/text.hpp"

#ifndef DGROVER_VERSION
#define DGROVER_VERSION "0.0.0"
#endif

namespace dgrover::cli {

namespace {

using json = nlohmann::json;

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv(kSeedEnvVar); env != nullptr && *env != '\0') {
    std::uint64_t value = 0;
    const std::string_view text(env);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
      throw ParseError(std::string(kSeedEnvVar) + " is not an unsigned integer");
    }
    return value;
  }
  return kDefaultSeed;
}

json manifest(const std::string& command, const std::vector<std::string>& argv, json parameters,
              std::uint64_t seed) {
  return json{{"tool", "dgrover"},
              {"version", DGROVER_VERSION},
              {"command", command},
              {"argv", argv},
              {"parameters", std::move(parameters)},
              {"seed", seed},
              {"rng", "splitmix64 keyed by (seed, trial, step, channel)"},
              {"timestamp", utc_timestamp()}};
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + path.string() + " for writing");
  file << content;
  if (!file) throw std::runtime_error("failed writing " + path.string());
}

// ---------------------------------------------------------------- phases

struct PhasesArgs {
  double lambda = 0.0;
  std::string tmpl = "improved";
  std::optional<int> kd;
  std::optional<int> position;
  std::string format = "json";
};

int cmd_phases(const PhasesArgs& a, std::ostream& out) {
  const Fraction lambda(a.lambda);
  if (lambda.value() > kMaxDeterministicLambda) {
    throw DomainError("lambda must lie in (0, 0.25] for two-phase solutions");
  }
  TwoPhaseTemplate tmpl = improved_template(lambda);
  if (a.tmpl == "d2p") {
    tmpl = d2p_template(lambda, a.kd.value_or(critical_steps(lambda).k));
  } else if (a.tmpl == "positioned") {
    if (!a.position) throw DomainError("--template positioned needs --position");
    tmpl = positioned_template(lambda, *a.position);
  }
  const SolveResult r = solve_two_phase(tmpl);

  if (a.format == "csv") {
    out << "lambda,template,k,beta1,beta2,residual\n"
        << format_double(a.lambda) << "," << a.tmpl << "," << tmpl.total_steps << ","
        << format_double(r.beta1) << "," << format_double(r.beta2) << "," << format_double(r.residual)
        << "\n";
  } else {
    json j{{"lambda", a.lambda}, {"template", a.tmpl}, {"k", tmpl.total_steps}, {"beta1", r.beta1},
           {"beta2", r.beta2},   {"residual", r.residual}, {"iterations", r.iterations}};
    if (tmpl.alternating) j["kd"] = tmpl.total_steps;
    if (a.tmpl == "positioned") j["position"] = *a.position;
    out << j.dump(2) << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string algorithm = "improved";
  double lambda = 0.0;
  std::string noise = "none";
  std::int64_t samples = 10000;
  std::optional<std::uint64_t> seed;
  std::optional<int> kd;
  std::optional<int> position;
  int threads = 0;
  std::string out;
  std::string format = "csv";
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  ExperimentConfig config;
  config.algorithm = parse_schedule_kind(a.algorithm);
  config.lambda = a.lambda;
  config.noise = parse_noise_spec(a.noise);
  config.samples = a.samples;
  config.seed = resolve_seed(a.seed);
  config.kd = a.kd;
  config.position = a.position;

  SweepRow row{config, run_experiment(config, a.threads), {}};

  std::string body;
  if (a.format == "json") {
    json j{{"algorithm", a.algorithm},
           {"lambda", config.lambda},
           {"noise", format_noise_spec(config.noise)},
           {"samples", config.samples},
           {"seed", config.seed},
           {"mean_success", row.stats->mean},
           {"stderr", row.stats->std_error}};
    if (config.kd) j["kd"] = *config.kd;
    if (config.position) j["position"] = *config.position;
    body = j.dump(2) + "\n";
  } else {
    body = csv_header() + "\n" + csv_row("", row) + "\n";
  }

  if (a.out.empty()) {
    out << body;
    return kOk;
  }
  std::vector<std::string> argv{"simulate",  "--algorithm", a.algorithm,
                                "--lambda",  format_double(a.lambda),
                                "--noise",   format_noise_spec(config.noise),
                                "--samples", std::to_string(config.samples),
                                "--seed",    std::to_string(config.seed),
                                "--format",  a.format,
                                "--out",     a.out};
  if (config.kd) argv.insert(argv.end(), {"--kd", std::to_string(*config.kd)});
  if (config.position) argv.insert(argv.end(), {"--position", std::to_string(*config.position)});
  json params{{"algorithm", a.algorithm}, {"lambda", config.lambda}, {"noise", format_noise_spec(config.noise)},
              {"samples", config.samples}, {"format", a.format}};
  json m = manifest("simulate", argv, params, config.seed);
  m["outputs"] = {std::filesystem::path(a.out).filename().string()};
  write_file(a.out, body);
  write_file(a.out + ".manifest.json", m.dump(2) + "\n");
  out << "wrote " << a.out << "\n";
  return kOk;
}

// ---------------------------------------------------------------- reproduce

struct ReproduceArgs {
  std::string figure;
  std::optional<std::int64_t> samples;
  std::optional<std::uint64_t> seed;
  std::string out = ".";
  int threads = 0;
  int grid_points = 50;
  double lambda_min = 0.001;
  double lambda_max = 0.25;
};

int cmd_reproduce(const ReproduceArgs& a, std::ostream& out) {
  FigureOptions options;
  options.samples = a.samples;
  options.seed = resolve_seed(a.seed);
  options.grid_points = a.grid_points;
  options.lambda_min = a.lambda_min;
  options.lambda_max = a.lambda_max;
  const FigureDefinition def = figure_definition(a.figure, options);

  const std::vector<SweepRow> rows = sweep(def.sweep, a.threads);
  std::string csv = csv_header() + "\n";
  json errors = json::array();
  for (const SweepRow& row : rows) {
    csv += csv_row(def.id, row) + "\n";
    if (!row.stats) {
      errors.push_back({{"algorithm", to_string(row.config.algorithm)}, {"lambda", row.config.lambda},
                        {"error", row.error}});
    }
  }

  const std::filesystem::path dir(a.out);
  const std::string stem = "figure_" + def.id;
  std::vector<std::string> argv{"reproduce", "--figure", def.id, "--samples",
                                std::to_string(def.sweep.base.samples), "--seed",
                                std::to_string(options.seed), "--out", a.out, "--grid-points",
                                std::to_string(a.grid_points), "--lambda-min", format_double(a.lambda_min),
                                "--lambda-max", format_double(a.lambda_max)};
  json params{{"figure", def.id},
              {"samples", def.sweep.base.samples},
              {"noise", format_noise_spec(def.sweep.base.noise)},
              {"grid", def.sweep.values},
              {"axis", def.sweep.axis == SweepAxis::lambda     ? "lambda"
                       : def.sweep.axis == SweepAxis::variance ? "variance"
                                                               : "position"}};
  json m = manifest("reproduce", argv, params, options.seed);
  m["outputs"] = {stem + ".csv"};
  m["errors"] = errors;

  write_file(dir / (stem + ".csv"), csv);
  write_file(dir / (stem + ".manifest.json"), m.dump(2) + "\n");
  out << "wrote " << (dir / (stem + ".csv")).string() << " (" << rows.size() << " rows";
  if (!errors.empty()) out << ", " << errors.size() << " error rows";
  out << ")\n";
  return kOk;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string suite = "all";
  std::optional<std::uint64_t> seed;
  std::string json_path;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const std::uint64_t seed = resolve_seed(a.seed);
  std::vector<std::string> suites = a.suite == "all" ? suite_ids() : std::vector<std::string>{a.suite};
  std::vector<CheckResult> results;
  for (const auto& s : suites) {
    auto r = run_suite(s, seed);
    results.insert(results.end(), r.begin(), r.end());
  }

  bool all = true;
  json checks = json::array();
  for (const auto& r : results) {
    all = all && r.passed;
    out << (r.passed ? "[PASS] " : "[FAIL] ") << r.suite << ": " << r.name << "  value=" << format_double(r.value)
        << " (" << r.relation << " " << format_double(r.tolerance) << ")\n";
    checks.push_back({{"suite", r.suite}, {"name", r.name}, {"passed", r.passed}, {"value", r.value},
                      {"tolerance", r.tolerance}, {"relation", r.relation}});
  }
  out << (all ? "all checks passed" : "some checks FAILED") << "\n";
  if (!a.json_path.empty()) {
    write_file(a.json_path, json{{"seed", seed}, {"passed", all}, {"checks", checks}}.dump(2) + "\n");
  }
  return all ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------- rerun

struct RerunArgs {
  std::string manifest;
  std::optional<int> threads;
  std::string out;
};

int cmd_rerun(const RerunArgs& a, std::ostream& out, std::ostream& err) {
  std::ifstream file(a.manifest);
  if (!file) throw ParseError("cannot read manifest " + a.manifest);
  json m;
  try {
    m = json::parse(file);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed manifest: ") + e.what());
  }
  if (!m.contains("argv") || !m["argv"].is_array()) throw ParseError("manifest has no argv");
  auto argv = m["argv"].get<std::vector<std::string>>();
  if (argv.empty() || argv.front() == "rerun") throw ParseError("manifest argv is not replayable");
  if (!a.out.empty()) {
    const auto it = std::find(argv.begin(), argv.end(), "--out");
    if (it != argv.end() && std::next(it) != argv.end()) {
      *std::next(it) = a.out;
    } else {
      argv.insert(argv.end(), {"--out", a.out});
    }
  }
  if (a.threads) argv.insert(argv.end(), {"--threads", std::to_string(*a.threads)});
  return run(argv, out, err);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Deterministic Grover search under coherent phase noise", "dgrover"};
  app.require_subcommand(1);
  app.set_version_flag("--version", DGROVER_VERSION);

  PhasesArgs phases;
  auto* p = app.add_subcommand("phases", "Solve the two designed phases of a deterministic schedule");
  p->add_option("--lambda", phases.lambda, "Solution fraction M/N in (0, 0.25]")->required();
  p->add_option("--template", phases.tmpl)->check(CLI::IsMember({"improved", "d2p", "positioned"}));
  p->add_option("--kd", phases.kd, "Zigzag length for --template d2p");
  p->add_option("--position", phases.position, "Position n of the designed pair (1..k-1)");
  p->add_option("--format", phases.format)->check(CLI::IsMember({"json", "csv"}));

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Monte Carlo success probability of one algorithm");
  s->add_option("--algorithm", sim.algorithm)
      ->check(CLI::IsMember({"original", "d2p", "improved", "positioned"}));
  s->add_option("--lambda", sim.lambda)->required();
  s->add_option("--noise", sim.noise, "e.g. gaussian:mu=0,var=0.04@reflection");
  s->add_option("--samples", sim.samples);
  s->add_option("--seed", sim.seed);
  s->add_option("--kd", sim.kd);
  s->add_option("--position", sim.position);
  s->add_option("--threads", sim.threads, "OpenMP threads (0 = default)");
  s->add_option("--out", sim.out, "Output file; a .manifest.json is written next to it");
  s->add_option("--format", sim.format)->check(CLI::IsMember({"json", "csv"}));

  ReproduceArgs rep;
  auto* r = app.add_subcommand("reproduce", "Write the CSV dataset behind one figure");
  r->add_option("--figure", rep.figure)->required()->check(CLI::IsMember(figure_ids()));
  r->add_option("--samples", rep.samples);
  r->add_option("--seed", rep.seed);
  r->add_option("--out", rep.out, "Output directory");
  r->add_option("--threads", rep.threads);
  r->add_option("--grid-points", rep.grid_points, "Points on the lambda grid");
  r->add_option("--lambda-min", rep.lambda_min);
  r->add_option("--lambda-max", rep.lambda_max);

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "Run invariant suites");
  std::vector<std::string> suites = suite_ids();
  suites.push_back("all");
  v->add_option("--suite", ver.suite)->check(CLI::IsMember(suites));
  v->add_option("--seed", ver.seed);
  v->add_option("--json", ver.json_path, "Also write the report as JSON");

  RerunArgs rer;
  auto* re = app.add_subcommand("rerun", "Replay the command recorded in a manifest");
  re->add_option("--manifest", rer.manifest)->required();
  re->add_option("--threads", rer.threads);
  re->add_option("--out", rer.out, "Override the recorded output location");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << DGROVER_VERSION << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*p) return cmd_phases(phases, out);
    if (*s) return cmd_simulate(sim, out);
    if (*r) return cmd_reproduce(rep, out);
    if (*v) return cmd_verify(ver, out);
    if (*re) return cmd_rerun(rer, out, err);
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what() << "\n";
    return kSolverFailure;
  } catch (const std::logic_error& e) {  // DomainError, ParseError, LengthMismatchError, ...
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kUsage;
}

}  // namespace dgrover::cli
