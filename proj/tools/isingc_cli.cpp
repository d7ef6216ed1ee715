// isingc command-line tool. Links only the C interface.
#include "isingc/isingc.h"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitTimeout = 2;
constexpr int kExitUsage = 3;

struct GraphDeleter {
  void operator()(isc_graph* g) const { isc_graph_destroy(g); }
};
struct SequenceDeleter {
  void operator()(isc_sequence* s) const { isc_sequence_destroy(s); }
};
struct ResultDeleter {
  void operator()(isc_opt_result* r) const { isc_opt_result_destroy(r); }
};
using GraphPtr = std::unique_ptr<isc_graph, GraphDeleter>;
using SequencePtr = std::unique_ptr<isc_sequence, SequenceDeleter>;
using ResultPtr = std::unique_ptr<isc_opt_result, ResultDeleter>;

// Carries the exit code out of a failing command.
struct Failure {
  int code;
  std::string message;
};

int exit_code_for(isc_status s) {
  switch (s) {
    case ISC_ERR_INVALID_ARGUMENT:
    case ISC_ERR_REQUIRES_UNWEIGHTED:
    case ISC_ERR_TOO_LARGE:
      return kExitUsage;
    default:
      return kExitFailure;
  }
}

void check(isc_status s) {
  if (s != ISC_OK) throw Failure{exit_code_for(s), isc_last_error()};
}

std::string take(char* s) {
  std::string out(s);
  isc_string_free(s);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitFailure, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{kExitFailure, "cannot write " + path.string()};
  out << text;
}

// JSON if the first non-blank character is '{', edge-list text otherwise.
GraphPtr load_graph(const std::string& path) {
  const auto text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  isc_graph* g = nullptr;
  if (first != std::string::npos && text[first] == '{')
    check(isc_graph_from_json(text.c_str(), &g));
  else
    check(isc_graph_parse_edge_list(text.c_str(), &g));
  return GraphPtr(g);
}

SequencePtr load_sequence(const std::string& path) {
  isc_sequence* s = nullptr;
  check(isc_sequence_from_json(read_file(path).c_str(), &s));
  return SequencePtr(s);
}

std::string graph_json(const isc_graph* g) {
  char* s = nullptr;
  check(isc_graph_to_json(g, &s));
  return take(s);
}

std::string sequence_json(const isc_sequence* seq) {
  char* s = nullptr;
  check(isc_sequence_to_json(seq, &s));
  return take(s);
}

std::string sequence_l1(const isc_sequence* seq) {
  char* s = nullptr;
  check(isc_sequence_l1(seq, &s));
  return take(s);
}

SequencePtr compile(const isc_graph* g, const std::string& method) {
  isc_sequence* s = nullptr;
  check(isc_compile(g, method == "stars" ? ISC_METHOD_STARS : ISC_METHOD_EDGES, &s));
  return SequencePtr(s);
}

// Settings shared by every command and recorded in the manifest.
struct Run {
  Run(std::string cmd, std::vector<std::string> in) : command(std::move(cmd)), inputs(std::move(in)) {}

  std::string command;
  std::vector<std::string> inputs;
  std::optional<std::uint64_t> seed;
  json overrides = json::object();
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  json manifest() const {
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    json j;
    j["command"] = command;
    j["inputs"] = inputs;
    j["seed"] = seed ? json(*seed) : json(nullptr);
    j["config_overrides"] = overrides;
    j["version"] = isc_version();
    j["wall_time_ms"] = ms;
    return j;
  }

  // Writes `text` to `out` (stdout when empty) and the manifest beside it.
  void emit(const std::string& out, const std::string& text) const {
    if (out.empty()) {
      std::cout << text << '\n';
      return;
    }
    write_file(out, text + "\n");
    write_file(out + ".manifest.json", manifest().dump(2) + "\n");
  }
};

int cmd_compile(const std::string& graph_path, const std::string& method, const std::string& out) {
  Run run{"compile --method " + method, {graph_path}};
  auto g = load_graph(graph_path);
  auto seq = compile(g.get(), method);
  isc_verify_report report{};
  check(isc_verify(seq.get(), g.get(), &report));
  const int n = isc_graph_num_vertices(g.get());
  const auto m = isc_graph_num_edges(g.get());
  const auto l0 = isc_sequence_l0(seq.get());
  const auto bound = method == "stars" ? (n == 0 ? 0 : 3 * n - 2) : static_cast<long>(3 * m + 1);
  std::cerr << "n=" << n << " m=" << m << " L0=" << l0 << " L1=" << sequence_l1(seq.get()) << " bound=" << bound
            << " (" << (method == "stars" ? "3n-2" : "3m+1") << ") verified=" << (report.verified ? "true" : "false")
            << '\n';
  if (!report.verified) throw Failure{kExitFailure, "compiled sequence failed verification"};
  run.emit(out, sequence_json(seq.get()));
  return kExitOk;
}

struct OptimizeArgs {
  std::string graph;
  std::string objective = "l0";
  std::string big_m = "sum";
  double time_limit_s = 600;
  int subsample = 0;
  std::uint64_t seed = 2021;
  std::string out;
};

int cmd_optimize(const OptimizeArgs& a) {
  Run run{"optimize --objective " + a.objective, {a.graph}};
  run.overrides = {{"big_m", a.big_m}, {"time_limit_s", a.time_limit_s}};
  auto g = load_graph(a.graph);
  const int n = isc_graph_num_vertices(g.get());
  const auto m_kind = a.big_m == "theorem" ? ISC_BIG_M_THEOREM : ISC_BIG_M_SUM;
  const auto limit_ms = static_cast<int64_t>(a.time_limit_s * 1000);
  isc_opt_result* raw = nullptr;
  if (a.subsample > 0) {
    if (a.objective != "l0") throw Failure{kExitUsage, "--subsample applies to the l0 objective only"};
    run.seed = a.seed;
    run.overrides["subsample"] = a.subsample;
    check(isc_optimize_subsample(g.get(), a.subsample, a.seed, m_kind, limit_ms, &raw));
  } else {
    if (n > 8)
      throw Failure{kExitUsage, "exact optimization supports n <= 8 (got n = " + std::to_string(n) +
                                    "); pass --subsample ROWS to search a random subset of flip rows"};
    check(isc_optimize(g.get(), a.objective == "l1" ? ISC_OBJECTIVE_L1 : ISC_OBJECTIVE_L0, m_kind, limit_ms, &raw));
  }
  ResultPtr result(raw);
  char* text = nullptr;
  check(isc_opt_result_to_json(result.get(), &text));
  auto j = json::parse(take(text));
  j["manifest"] = run.manifest();
  run.emit(a.out, j.dump(2));
  std::cerr << "objective=" << j["objective"].get<std::string>() << " status=" << j["status"].get<std::string>()
            << '\n';
  return isc_opt_result_status(result.get()) == ISC_SOLVE_INCUMBENT_TIMEOUT ? kExitTimeout : kExitOk;
}

int cmd_verify(const std::string& seq_path, const std::string& graph_path) {
  auto seq = load_sequence(seq_path);
  auto g = load_graph(graph_path);
  isc_verify_report report{};
  check(isc_verify(seq.get(), g.get(), &report));
  if (report.verified) {
    std::cout << "verified L0=" << isc_sequence_l0(seq.get()) << " L1=" << sequence_l1(seq.get()) << '\n';
    return kExitOk;
  }
  if (report.mismatch_i < 0)
    std::cout << "not verified: sequence has " << isc_sequence_num_qubits(seq.get()) << " qubits, graph has "
              << isc_graph_num_vertices(g.get()) << " vertices\n";
  else
    std::cout << "not verified: first mismatch at (" << report.mismatch_i << "," << report.mismatch_j << ")\n";
  return kExitFailure;
}

isc_timing timing_from_config(const std::string& path) {
  auto t = isc_default_timing();
  if (path.empty()) return t;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto key = line.substr(0, eq);
    key.erase(0, key.find_first_not_of(" \t"));
    key.erase(key.find_last_not_of(" \t\r") + 1);
    const auto value = line.substr(eq + 1);
    try {
      if (key == "timing.t_pi_us") t.t_pi_us = std::stod(value);
      if (key == "timing.t_ising_per_ion_us") t.t_ising_per_ion_us = std::stod(value);
      if (key == "timing.t_ms_us") t.t_ms_us = std::stod(value);
    } catch (const std::exception&) {
      throw Failure{kExitFailure, "bad value for " + key};
    }
  }
  return t;
}

int cmd_cost(const std::string& seq_path, int worst_n, const std::string& config) {
  const auto timing = timing_from_config(config);
  double us = 0;
  if (worst_n > 0) {
    check(isc_estimate_time_norms_us(worst_n, static_cast<size_t>(3 * worst_n - 2), worst_n - 1, &timing, &us));
    std::cout << "n=" << worst_n << " L0=" << 3 * worst_n - 2 << " L1=" << worst_n - 1;
  } else {
    if (seq_path.empty()) throw Failure{kExitUsage, "cost needs a pulse file or --worst-case N"};
    auto seq = load_sequence(seq_path);
    check(isc_estimate_time_us(seq.get(), &timing, &us));
    std::cout << "n=" << isc_sequence_num_qubits(seq.get()) << " L0=" << isc_sequence_l0(seq.get())
              << " L1=" << sequence_l1(seq.get());
  }
  std::cout << " time_us=" << us << " time_ms=" << us / 1000 << '\n';
  return kExitOk;
}

struct SimulateArgs {
  std::string graph;
  std::string compilation = "ms";
  std::string sequence;
  std::string method;
  std::optional<double> gamma;
  std::optional<double> beta;
  std::vector<double> lambda_grid{0.0};
  int grid_res = 32;
  std::string out;
};

int cmd_simulate(const SimulateArgs& a) {
  Run run{"simulate --compilation " + a.compilation, {a.graph}};
  run.overrides = {{"lambda_grid", a.lambda_grid}, {"grid_res", a.grid_res}};
  auto g = load_graph(a.graph);
  SequencePtr seq;
  const auto comp = a.compilation == "cx" ? ISC_COMPILATION_CX : ISC_COMPILATION_MS;
  if (comp == ISC_COMPILATION_MS) {
    if (!a.sequence.empty()) {
      run.inputs.push_back(a.sequence);
      seq = load_sequence(a.sequence);
    } else {
      const auto method = !a.method.empty() ? a.method : (isc_graph_is_unweighted(g.get()) ? "stars" : "edges");
      seq = compile(g.get(), method);
    }
  }
  if (a.gamma.has_value() != a.beta.has_value()) throw Failure{kExitUsage, "--gamma and --beta go together"};
  double maxcut = 0;
  check(isc_maxcut(g.get(), &maxcut));
  std::ostringstream csv;
  csv << "compilation,lambda,gamma,beta,expectation,ratio\n";
  csv.precision(17);
  for (double lambda : a.lambda_grid) {
    isc_angles r{};
    if (a.gamma) {
      r.gamma = *a.gamma;
      r.beta = *a.beta;
      check(isc_simulate(g.get(), comp, seq.get(), r.gamma, r.beta, lambda, &r.expectation));
      r.ratio = maxcut > 0 ? r.expectation / maxcut : 0.0;
    } else {
      check(isc_optimize_angles(g.get(), comp, seq.get(), lambda, a.grid_res, &r));
    }
    csv << a.compilation << ',' << lambda << ',' << r.gamma << ',' << r.beta << ',' << r.expectation << ',' << r.ratio
        << '\n';
  }
  auto text = csv.str();
  text.pop_back();
  run.emit(a.out, text);
  return kExitOk;
}

struct SweepArgs {
  std::string kind;
  std::string config;
  std::string out = "results";
  std::optional<std::uint64_t> seed;
  std::optional<double> time_limit_s;
  std::optional<std::string> big_m;
  std::optional<std::string> lambda_grid;
  std::optional<int> grid_res;
  std::vector<std::string> sets;
};

int cmd_sweep(const SweepArgs& a) {
  Run run{"sweep " + a.kind, {}};
  std::string text;
  if (!a.config.empty()) {
    run.inputs.push_back(a.config);
    text = read_file(a.config) + "\n";
  }
  // Later keys override earlier ones, so flags appended here win over the file.
  auto set = [&](const std::string& key, const std::string& value) {
    run.overrides[key] = value;
    text += key + " = " + value + "\n";
  };
  if (a.seed) {
    run.seed = a.seed;
    set("seed", std::to_string(*a.seed));
  }
  if (a.time_limit_s) set("time_limit_s", std::to_string(*a.time_limit_s));
  if (a.big_m) set("big_m", *a.big_m);
  if (a.lambda_grid) set("lambda_grid", *a.lambda_grid);
  if (a.grid_res) set("grid_res", std::to_string(*a.grid_res));
  for (const auto& kv : a.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw Failure{kExitUsage, "--set expects key=value, got " + kv};
    set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  char* summary = nullptr;
  check(isc_sweep(a.kind.c_str(), text.c_str(), a.out.c_str(), &summary));
  auto j = json::parse(take(summary));
  auto manifest = run.manifest();
  manifest["outputs"] = j["files"];
  write_file(fs::path(a.out) / (a.kind + ".manifest.json"), manifest.dump(2) + "\n");
  std::cerr << "instances=" << j["instances"] << " timeouts=" << j["timeouts"] << '\n';
  for (const auto& f : j["files"]) std::cout << f.get<std::string>() << '\n';
  return kExitOk;
}

int cmd_gen(int n, double p, const std::string& weights, std::uint64_t seed, const std::string& format,
            const std::string& out) {
  Run run{"gen", {}};
  run.seed = seed;
  run.overrides = {{"n", n}, {"p", p}, {"weights", weights}, {"format", format}};
  isc_graph* raw = nullptr;
  check(isc_graph_random_er(n, p, weights.c_str(), seed, &raw));
  GraphPtr g(raw);
  std::string text;
  if (format == "json") {
    text = graph_json(g.get());
  } else {
    char* s = nullptr;
    check(isc_graph_to_edge_list(g.get(), &s));
    text = take(s);
    if (!text.empty() && text.back() == '\n') text.pop_back();
  }
  run.emit(out, text);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compile weighted coupling graphs into global Ising pulse sequences"};
  app.set_version_flag("--version", std::string(isc_version()));
  app.require_subcommand(1);

  std::string graph, method = "stars", out;
  auto* compile_cmd = app.add_subcommand("compile", "Compile a graph with a provable construction");
  compile_cmd->add_option("graph", graph, "Graph file (edge list or JSON)")->required()->check(CLI::ExistingFile);
  compile_cmd->add_option("--method", method, "stars (uniform weights) or edges")
      ->check(CLI::IsMember({"stars", "edges"}));
  compile_cmd->add_option("--out", out, "Output pulse JSON (stdout if omitted)");

  OptimizeArgs opt;
  auto* optimize_cmd = app.add_subcommand("optimize", "Minimum-L0 or minimum-L1 sequence over all flip rows");
  optimize_cmd->add_option("graph", opt.graph, "Graph file")->required()->check(CLI::ExistingFile);
  optimize_cmd->add_option("--objective", opt.objective)->check(CLI::IsMember({"l0", "l1"}));
  optimize_cmd->add_option("--big-m", opt.big_m, "Strength bound: sum or theorem")
      ->check(CLI::IsMember({"sum", "theorem"}));
  optimize_cmd->add_option("--time-limit", opt.time_limit_s, "Seconds")->check(CLI::PositiveNumber);
  optimize_cmd->add_option("--subsample", opt.subsample, "Restrict to this many random flip rows")
      ->check(CLI::PositiveNumber);
  optimize_cmd->add_option("--seed", opt.seed, "Seed for --subsample");
  optimize_cmd->add_option("--out", opt.out);

  std::string seq_path, verify_graph;
  auto* verify_cmd = app.add_subcommand("verify", "Check that a pulse sequence realizes a graph exactly");
  verify_cmd->add_option("pulse", seq_path, "Pulse JSON")->required()->check(CLI::ExistingFile);
  verify_cmd->add_option("graph", verify_graph, "Graph file")->required()->check(CLI::ExistingFile);

  std::string cost_seq, cost_config;
  int worst_n = 0;
  auto* cost_cmd = app.add_subcommand("cost", "Estimate wall-clock time of a pulse sequence");
  cost_cmd->add_option("pulse", cost_seq, "Pulse JSON")->check(CLI::ExistingFile);
  cost_cmd->add_option("--worst-case", worst_n, "Use the union-of-stars worst case for n qubits instead")
      ->check(CLI::PositiveNumber);
  cost_cmd->add_option("--config", cost_config, "key = value file with timing.* entries")
      ->check(CLI::ExistingFile);

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Noisy p=1 QAOA Max-Cut expectation");
  simulate_cmd->add_option("graph", sim.graph, "Graph file")->required()->check(CLI::ExistingFile);
  simulate_cmd->add_option("--compilation", sim.compilation)->check(CLI::IsMember({"cx", "ms"}));
  simulate_cmd->add_option("--sequence", sim.sequence, "Pulse JSON for ms (compiled from the graph if omitted)")
      ->check(CLI::ExistingFile);
  simulate_cmd->add_option("--method", sim.method, "Construction for ms when no sequence is given")
      ->check(CLI::IsMember({"stars", "edges"}));
  simulate_cmd->add_option("--gamma", sim.gamma, "Fixed gamma (grid search if omitted)");
  simulate_cmd->add_option("--beta", sim.beta, "Fixed beta");
  simulate_cmd->add_option("--lambda-grid", sim.lambda_grid, "Major noise rates")->delimiter(',');
  simulate_cmd->add_option("--grid-res", sim.grid_res, "Angle grid points per axis")->check(CLI::Range(8, 4096));
  simulate_cmd->add_option("--out", sim.out, "CSV output");

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run an experiment family and write CSV");
  sweep_cmd->add_option("kind", sweep.kind)
      ->required()
      ->check(CLI::IsMember({"fig_random_unweighted", "fig_random_weighted", "fig_worstcase", "fig_noise"}));
  sweep_cmd->add_option("--config", sweep.config, "key = value file")->check(CLI::ExistingFile);
  sweep_cmd->add_option("--out", sweep.out, "Output directory");
  sweep_cmd->add_option("--seed", sweep.seed);
  sweep_cmd->add_option("--time-limit", sweep.time_limit_s, "Seconds per instance")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--big-m", sweep.big_m)->check(CLI::IsMember({"sum", "theorem"}));
  sweep_cmd->add_option("--lambda-grid", sweep.lambda_grid, "Comma-separated noise rates");
  sweep_cmd->add_option("--grid-res", sweep.grid_res)->check(CLI::Range(8, 4096));
  sweep_cmd->add_option("--set", sweep.sets, "Extra config override key=value");

  int gen_n = 7;
  double gen_p = 0.5;
  std::string gen_weights, gen_format = "edges";
  std::uint64_t gen_seed = 2021;
  auto* gen_cmd = app.add_subcommand("gen", "Erdos-Renyi random graph");
  gen_cmd->add_option("--n", gen_n)->check(CLI::Range(0, 64));
  gen_cmd->add_option("--p", gen_p)->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--weights", gen_weights, "Comma-separated weight set (unit weights if omitted)");
  gen_cmd->add_option("--seed", gen_seed);
  gen_cmd->add_option("--format", gen_format)->check(CLI::IsMember({"edges", "json"}));
  gen_cmd->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*compile_cmd) return cmd_compile(graph, method, out);
    if (*optimize_cmd) return cmd_optimize(opt);
    if (*verify_cmd) return cmd_verify(seq_path, verify_graph);
    if (*cost_cmd) return cmd_cost(cost_seq, worst_n, cost_config);
    if (*simulate_cmd) return cmd_simulate(sim);
    if (*sweep_cmd) return cmd_sweep(sweep);
    if (*gen_cmd) return cmd_gen(gen_n, gen_p, gen_weights, gen_seed, gen_format, out);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
