#include "isingc/experiments.hpp"

#include "isingc/constructions.hpp"
#include "isingc/error.hpp"
#include "isingc/exact_opt.hpp"
#include "isingc/qaoa_sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <optional>
#include <thread>

namespace isingc {

SweepKind parse_sweep_kind(std::string_view name) {
  if (name == "fig_random_unweighted") return SweepKind::random_unweighted;
  if (name == "fig_random_weighted") return SweepKind::random_weighted;
  if (name == "fig_worstcase") return SweepKind::worstcase;
  if (name == "fig_noise") return SweepKind::noise;
  throw Error(ErrorKind::invalid_argument, "unknown sweep kind '" + std::string(name) + "'");
}

std::string to_string(SweepKind kind) {
  switch (kind) {
    case SweepKind::random_unweighted: return "fig_random_unweighted";
    case SweepKind::random_weighted: return "fig_random_weighted";
    case SweepKind::worstcase: return "fig_worstcase";
    case SweepKind::noise: return "fig_noise";
  }
  return "unknown";
}

void parallel_for(int count, int jobs, const std::function<void(int)>& fn, const std::function<void(int)>& done) {
  jobs = std::clamp(jobs, 1, std::max(1, count));
  std::atomic<int> next{0};
  std::mutex lock;
  std::exception_ptr failure;
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        fn(i);
        std::lock_guard guard(lock);
        if (done) done(i);
      } catch (...) {
        std::lock_guard guard(lock);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

std::vector<std::pair<std::string, Graph>> noise_standin_graphs() {
  return {{"star_k1_5", star_graph(5)},
          {"cycle_6", cycle_graph(6)},
          {"complete_6", complete_graph(6)},
          {"two_star_example", two_star_example_graph()}};
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// Writes rows in index order as they become contiguous.
class OrderedCsv {
 public:
  OrderedCsv(const std::filesystem::path& path, const std::string& header, int count)
      : out_(path), rows_(count) {
    if (!out_) throw Error(ErrorKind::io, "cannot write " + path.string());
    out_ << header << '\n';
    out_.flush();
  }

  void set(int i, std::string row) { rows_[i] = std::move(row); }

  void flush_ready() {
    while (next_ < static_cast<int>(rows_.size()) && rows_[next_]) {
      out_ << *rows_[next_] << '\n';
      ++next_;
    }
    out_.flush();
  }

 private:
  std::ofstream out_;
  std::vector<std::optional<std::string>> rows_;
  int next_ = 0;
};

struct CommonSettings {
  std::uint64_t seed;
  int jobs;
  std::chrono::milliseconds time_limit;
  BigMKind m_kind;
};

CommonSettings common(const Config& c) {
  CommonSettings s;
  s.seed = config_uint64(c, "seed", 2021);
  const int hw = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
  s.jobs = config_int(c, "jobs", hw);
  s.time_limit = std::chrono::milliseconds(static_cast<long long>(config_double(c, "time_limit_s", 600.0) * 1000));
  const auto m = config_string(c, "big_m", "sum");
  if (m != "sum" && m != "theorem") throw Error(ErrorKind::invalid_argument, "big_m must be 'sum' or 'theorem'");
  s.m_kind = m == "theorem" ? BigMKind::theorem_bound : BigMKind::practical_sum;
  return s;
}

SweepSummary random_family(bool weighted, const Config& c, const std::filesystem::path& dir) {
  const auto s = common(c);
  const int n = config_int(c, "n", 7);
  const int per_p = config_int(c, "graphs_per_p", 4);
  const double p_step = config_double(c, "p_step", 0.04);
  const int p_count = config_int(c, "p_count", 24);
  std::vector<Rational> weights;
  if (weighted) {
    weights = config_rationals(c, "weights", {1, 2, 3});
    if (weights.empty()) throw Error(ErrorKind::parse, "weights must list at least one value");
  }
  const int count = per_p * p_count;
  const std::string tag = weighted ? "edges" : "stars";

  SweepSummary summary;
  summary.files.push_back(dir / (weighted ? "random_weighted.csv" : "random_unweighted.csv"));
  OrderedCsv csv(summary.files.back(),
                 "graph_id,p,seed,n,m,L0_" + tag + ",L0_opt,L1_" + tag + ",L1_opt,status,lower_bound,wall_ms", count);
  std::atomic<int> timeouts{0};
  parallel_for(
      count, s.jobs,
      [&](int i) {
        const double p = p_step * (i / per_p + 1);
        const std::uint64_t seed = s.seed + static_cast<std::uint64_t>(i);
        const Graph g = random_er_graph(n, p, weights, seed);
        const PulseSequence built = weighted ? weighted_edge_by_edge(g) : union_of_stars(g);
        const OptResult l0 = solve_l0(g, {big_m(g, s.m_kind), s.time_limit, std::nullopt});
        const OptResult l1 = solve_l1(g);
        if (l0.status == SolveStatus::incumbent_timeout) ++timeouts;
        csv.set(i, std::to_string(i) + ',' + fmt(p) + ',' + std::to_string(seed) + ',' + std::to_string(n) + ',' +
                       std::to_string(g.num_edges()) + ',' + std::to_string(built.l0()) + ',' +
                       to_string(l0.objective) + ',' + fmt(to_double(built.l1())) + ',' +
                       fmt(to_double(l1.objective)) + ',' + to_string(l0.status) + ',' + to_string(l0.lower_bound) +
                       ',' + std::to_string(l0.wall_time.count()));
      },
      [&](int) { csv.flush_ready(); });
  summary.instances = count;
  summary.timeouts = timeouts;
  return summary;
}

SweepSummary worstcase(const Config& c, const std::filesystem::path& dir) {
  const auto s = common(c);
  const int min_n = config_int(c, "min_n", 3);
  const int max_n = config_int(c, "max_n", 5);
  const bool dedupe = config_int(c, "dedupe", 0) != 0;
  SweepSummary summary;
  summary.files.push_back(dir / "worstcase.csv");
  std::ofstream out(summary.files.back());
  if (!out) throw Error(ErrorKind::io, "cannot write " + summary.files.back().string());
  out << "n,graphs,max_L0_opt,n_plus_1,bound_3n_minus_2,max_L0_stars,timeouts\n";
  for (int n = min_n; n <= max_n; ++n) {
    const auto graphs = enumerate_labeled_graphs(n, dedupe);
    std::vector<int> opt(graphs.size(), 0);
    std::vector<int> stars(graphs.size(), 0);
    std::atomic<int> timeouts{0};
    parallel_for(static_cast<int>(graphs.size()), s.jobs, [&](int i) {
      const auto& g = graphs[i];
      const auto r = solve_l0(g, {big_m(g, s.m_kind), s.time_limit, std::nullopt});
      if (r.status == SolveStatus::incumbent_timeout) ++timeouts;
      opt[i] = static_cast<int>(r.objective.get_num().get_si());
      stars[i] = static_cast<int>(union_of_stars(g).l0());
    });
    out << n << ',' << graphs.size() << ',' << *std::max_element(opt.begin(), opt.end()) << ',' << n + 1 << ','
        << 3 * n - 2 << ',' << *std::max_element(stars.begin(), stars.end()) << ',' << timeouts << '\n';
    out.flush();
    summary.instances += static_cast<int>(graphs.size());
    summary.timeouts += timeouts;
  }
  return summary;
}

SweepSummary noise(const Config& c, const std::filesystem::path& dir) {
  const auto s = common(c);
  const auto lambdas = config_doubles(c, "lambda_grid", {0.0, 0.001, 0.002, 0.005, 0.01, 0.02});
  const int grid = config_int(c, "grid_res", 32);
  const auto graphs = noise_standin_graphs();
  struct Task {
    std::size_t graph;
    Compilation compilation;
    double lambda;
  };
  std::vector<Task> tasks;
  for (std::size_t gi = 0; gi < graphs.size(); ++gi)
    for (auto comp : {Compilation::cx, Compilation::ms})
      for (double l : lambdas) tasks.push_back({gi, comp, l});

  SweepSummary summary;
  summary.files.push_back(dir / "noise.csv");
  OrderedCsv csv(summary.files.back(), "graph_id,compilation,lambda,gamma,beta,expectation,ratio",
                 static_cast<int>(tasks.size()));
  std::vector<PulseSequence> sequences;
  for (const auto& [id, g] : graphs) sequences.push_back(union_of_stars(g));
  parallel_for(
      static_cast<int>(tasks.size()), s.jobs,
      [&](int i) {
        const auto& t = tasks[i];
        const auto& g = graphs[t.graph].second;
        const auto r = optimize_angles(g, t.compilation, &sequences[t.graph], {t.lambda, 0.1}, grid);
        csv.set(i, graphs[t.graph].first + ',' + (t.compilation == Compilation::cx ? "CX" : "MS") + ',' +
                       fmt(t.lambda) + ',' + fmt(r.gamma) + ',' + fmt(r.beta) + ',' + fmt(r.expectation) + ',' +
                       fmt(r.ratio));
      },
      [&](int) { csv.flush_ready(); });
  summary.instances = static_cast<int>(tasks.size());
  return summary;
}

}  // namespace

SweepSummary run_sweep(SweepKind kind, const Config& config, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorKind::io, "cannot create " + out_dir.string() + ": " + ec.message());
  switch (kind) {
    case SweepKind::random_unweighted: return random_family(false, config, out_dir);
    case SweepKind::random_weighted: return random_family(true, config, out_dir);
    case SweepKind::worstcase: return worstcase(config, out_dir);
    case SweepKind::noise: return noise(config, out_dir);
  }
  return {};
}

}  // namespace isingc
