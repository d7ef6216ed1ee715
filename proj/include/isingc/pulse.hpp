#pragma once

#include "isingc/graph.hpp"
#include "isingc/rational.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace isingc {

inline constexpr int kMaxQubits = 64;

/// One row of the flip matrix: qubit i is conjugated by a bit flip when sign(i) == -1.
/// Stored as a bitmask with bit i set for sign -1.
class FlipRow {
 public:
  FlipRow() = default;
  FlipRow(int n, std::uint64_t flip_mask);
  static FlipRow all_plus(int n) { return FlipRow(n, 0); }
  /// From "+-+..." notation.
  static FlipRow parse(std::string_view signs);

  int size() const noexcept { return n_; }
  std::uint64_t mask() const noexcept { return mask_; }
  int sign(int i) const { return (mask_ >> i & 1U) ? -1 : 1; }
  std::vector<int> signs() const;
  std::string to_string() const;

  FlipRow negated() const;
  /// First sign forced to +1.
  FlipRow canonical() const { return sign(0) == 1 ? *this : negated(); }
  bool is_canonical() const { return sign(0) == 1; }

  friend bool operator==(const FlipRow&, const FlipRow&) = default;

 private:
  int n_ = 0;
  std::uint64_t mask_ = 0;
};

struct PulseOp {
  FlipRow row;
  Rational strength;

  friend bool operator==(const PulseOp&, const PulseOp&) = default;
};

/// Compiled program (P, W): an ordered list of global Ising operations, each
/// preceded and followed by the bit flips of its row.
class PulseSequence {
 public:
  PulseSequence() = default;
  explicit PulseSequence(int n);
  PulseSequence(int n, std::vector<PulseOp> ops);

  int num_qubits() const noexcept { return n_; }
  const std::vector<PulseOp>& ops() const noexcept { return ops_; }
  bool empty() const noexcept { return ops_.empty(); }
  std::size_t size() const noexcept { return ops_.size(); }

  void append(FlipRow row, Rational strength);

  /// Number of Ising operations.
  std::size_t l0() const noexcept { return ops_.size(); }
  /// Sum of |strength|.
  Rational l1() const;
  bool is_canonical() const;

  friend bool operator==(const PulseSequence&, const PulseSequence&) = default;

 private:
  int n_ = 0;
  std::vector<PulseOp> ops_;
};

/// A[i][j] = sum_p w_p s_p[i] s_p[j] for i != j; exact.
AdjacencyMatrix evaluate(const PulseSequence& seq);

struct VerifyReport {
  bool verified = false;
  /// First (i, j), i < j, in pair order where the realized coupling differs.
  std::optional<std::pair<int, int>> first_mismatch;
  Rational expected;
  Rational actual;
};

VerifyReport verify_detailed(const PulseSequence& seq, const Graph& g);
inline bool verify(const PulseSequence& seq, const Graph& g) { return verify_detailed(seq, g).verified; }

/// Rows of a followed by rows of b.
PulseSequence compose(const PulseSequence& a, const PulseSequence& b);

/// Normalizes each row to a leading +1, merges rows that coincide after
/// normalization by summing their strengths (kept at the first occurrence),
/// and drops zero strengths. evaluate() is preserved.
PulseSequence canonicalize(const PulseSequence& seq);

/// {"n": int, "ops": [{"mask": "+--+", "w": "p/q"}, ...]}
nlohmann::json to_json(const PulseSequence& seq);
PulseSequence sequence_from_json(const nlohmann::json& j);

}  // namespace isingc
