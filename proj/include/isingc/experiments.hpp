#pragma once

#include "isingc/config.hpp"
#include "isingc/graph.hpp"

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace isingc {

enum class SweepKind { random_unweighted, random_weighted, worstcase, noise };

/// Accepts "fig_random_unweighted", "fig_random_weighted", "fig_worstcase", "fig_noise".
SweepKind parse_sweep_kind(std::string_view name);
std::string to_string(SweepKind kind);

struct SweepSummary {
  std::vector<std::filesystem::path> files;
  int instances = 0;
  int timeouts = 0;
};

/// Runs one experiment family and writes its CSV into out_dir. Instance i of a
/// random family uses seed (seed + i); rows are written in instance order as
/// soon as every earlier instance has finished.
///
/// Keys: seed, n, graphs_per_p, p_step, p_count, time_limit_s, big_m (sum|theorem),
/// jobs, weights (random families); min_n, max_n, dedupe (worstcase);
/// lambda_grid, grid_res (noise).
SweepSummary run_sweep(SweepKind kind, const Config& config, const std::filesystem::path& out_dir);

/// Stand-in graphs for the noise comparison, with their ids.
std::vector<std::pair<std::string, Graph>> noise_standin_graphs();

/// Runs fn(0..count-1) on up to `jobs` threads. `done(i)` is called under a lock after fn(i).
void parallel_for(int count, int jobs, const std::function<void(int)>& fn, const std::function<void(int)>& done = {});

}  // namespace isingc
