#pragma once

#include "isingc/graph.hpp"
#include "isingc/pulse.hpp"
#include "isingc/rational.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace isingc {

/// Largest qubit count accepted by the exact solvers (2^(n-1) = 128 candidate rows).
inline constexpr int kMaxExactQubits = 8;

/// Largest qubit count accepted by subsample_solve.
inline constexpr int kMaxSubsampleQubits = 16;

/// All 2^(n-1) flip rows with a leading +1. Row k flips qubit i + 1 when bit i of k is set,
/// so row 0 is all +1.
class CompleteFlipMatrix {
 public:
  explicit CompleteFlipMatrix(int n);

  int num_qubits() const noexcept { return n_; }
  int size() const noexcept { return 1 << (n_ - 1); }
  FlipRow row(int k) const { return FlipRow(n_, static_cast<std::uint64_t>(k) << 1); }
  /// Inverse of row(): index of the canonical form of `r`.
  static int index_of(const FlipRow& r) { return static_cast<int>(r.canonical().mask() >> 1); }

 private:
  int n_;
};

enum class BigMKind { theorem_bound, practical_sum };

/// Bound on |strength| used by the L0 program.
struct BigM {
  /// theorem_bound: the smallest value of the form ceil(sqrt(X)) / q that is at least the
  /// closed-form bound, so it stays exact when the bound is irrational.
  Rational value;
  BigMKind kind = BigMKind::practical_sum;
};

/// theorem_bound: (3n-2)^((3n-1)/2) for unweighted graphs, Z (3m)^((3m+1)/2) otherwise.
/// practical_sum: Z = sum |z_e|. Either kind returns 1 for the empty graph.
BigM big_m(const Graph& g, BigMKind kind);

enum class Objective { l0, l1 };

enum class SolveStatus {
  optimal,
  /// Time limit hit; the sequence is the best incumbent found.
  incumbent_timeout,
  /// Search over a row subsample finished; no optimality claim.
  subsample_complete,
  infeasible,
};

struct OptResult {
  PulseSequence sequence;
  Rational objective;
  Objective objective_kind = Objective::l0;
  SolveStatus status = SolveStatus::infeasible;
  std::int64_t nodes_explored = 0;
  std::chrono::milliseconds wall_time{0};
  /// Proven lower bound on the objective (equals objective when optimal).
  Rational lower_bound;
  /// Root relaxation value: min sum |W| / M over the candidate rows (L0 only).
  Rational root_relaxation;
  /// Lower bound after each completed search level; non-decreasing.
  std::vector<int> bound_trace;
  std::optional<BigM> big_m;
  int candidate_rows = 0;
};

struct L0Options {
  std::optional<BigM> big_m;  ///< Defaults to practical_sum.
  std::chrono::milliseconds time_limit = std::chrono::minutes(10);
  /// Extra incumbent; ignored unless it verifies against the target.
  std::optional<PulseSequence> incumbent;
};

/// Minimum number of Ising operations realizing g with |strength| <= M.
///
/// The search enumerates supports of the complete flip matrix by increasing
/// size (each finished size raises the proven bound), starting from the root
/// relaxation bound and stopping below the construction incumbent. Only
/// linearly independent supports are expanded: an optimal support is always
/// independent, and its strengths are then unique. Spans are tested modulo
/// the prime 2^31 - 1 and every hit is confirmed with exact rationals.
OptResult solve_l0(const Graph& g, const L0Options& options = {});

/// Minimum sum |strength| over the complete flip matrix (a linear program).
OptResult solve_l1(const Graph& g);

struct SubsampleOptions {
  int row_budget = 0;
  std::uint64_t seed = 0;
  std::chrono::milliseconds time_limit = std::chrono::minutes(10);
  std::optional<BigM> big_m;
};

/// solve_l0 restricted to `row_budget` canonical rows drawn with std::mt19937_64(seed).
/// The all-ones row and the construction's rows are always kept when they fit the
/// budget. A budget covering the full matrix delegates to solve_l0.
OptResult subsample_solve(const Graph& g, const SubsampleOptions& options);

std::string to_string(SolveStatus status);
std::string to_string(BigMKind kind);
nlohmann::json to_json(const OptResult& result);

}  // namespace isingc
