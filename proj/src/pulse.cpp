#include "isingc/pulse.hpp"

#include "isingc/error.hpp"

#include <unordered_map>

namespace isingc {

FlipRow::FlipRow(int n, std::uint64_t flip_mask) : n_(n), mask_(flip_mask) {
  if (n < 1 || n > kMaxQubits) throw Error(ErrorKind::invalid_argument, "flip row length out of range");
  if (n < 64 && (flip_mask >> n) != 0) throw Error(ErrorKind::invalid_argument, "flip mask wider than row");
}

FlipRow FlipRow::parse(std::string_view signs) {
  if (signs.empty() || signs.size() > kMaxQubits) throw Error(ErrorKind::parse, "flip mask length out of range");
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (signs[i] == '-') {
      mask |= std::uint64_t{1} << i;
    } else if (signs[i] != '+') {
      throw Error(ErrorKind::parse, "flip mask must use '+' and '-', got '" + std::string(signs) + "'");
    }
  }
  return FlipRow(static_cast<int>(signs.size()), mask);
}

std::vector<int> FlipRow::signs() const {
  std::vector<int> out(n_);
  for (int i = 0; i < n_; ++i) out[i] = sign(i);
  return out;
}

std::string FlipRow::to_string() const {
  std::string s(n_, '+');
  for (int i = 0; i < n_; ++i)
    if (sign(i) < 0) s[i] = '-';
  return s;
}

FlipRow FlipRow::negated() const {
  std::uint64_t full = n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
  return FlipRow(n_, ~mask_ & full);
}

PulseSequence::PulseSequence(int n) : n_(n) {
  if (n < 1 || n > kMaxQubits) throw Error(ErrorKind::invalid_argument, "qubit count out of range");
}

PulseSequence::PulseSequence(int n, std::vector<PulseOp> ops) : PulseSequence(n) {
  for (auto& op : ops) append(op.row, std::move(op.strength));
}

void PulseSequence::append(FlipRow row, Rational strength) {
  if (row.size() != n_) throw Error(ErrorKind::dimension_mismatch, "flip row length differs from qubit count");
  ops_.push_back({row, std::move(strength)});
}

Rational PulseSequence::l1() const {
  Rational total = 0;
  for (const auto& op : ops_) total += abs(op.strength);
  return total;
}

bool PulseSequence::is_canonical() const {
  std::unordered_map<std::uint64_t, int> seen;
  for (const auto& op : ops_) {
    if (!op.row.is_canonical() || op.strength == 0) return false;
    if (!seen.emplace(op.row.mask(), 0).second) return false;
  }
  return true;
}

AdjacencyMatrix evaluate(const PulseSequence& seq) {
  const int n = seq.num_qubits();
  AdjacencyMatrix a(n);
  for (const auto& op : seq.ops()) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (op.row.sign(i) == op.row.sign(j)) {
          a.add(i, j, op.strength);
        } else {
          a.add(i, j, -op.strength);
        }
      }
    }
  }
  return a;
}

VerifyReport verify_detailed(const PulseSequence& seq, const Graph& g) {
  if (seq.num_qubits() != g.num_vertices()) {
    throw Error(ErrorKind::dimension_mismatch, "sequence has " + std::to_string(seq.num_qubits()) +
                                                   " qubits but graph has " + std::to_string(g.num_vertices()) +
                                                   " vertices");
  }
  const auto realized = evaluate(seq);
  const auto target = to_adjacency(g);
  VerifyReport report;
  for (int i = 0; i < g.num_vertices(); ++i) {
    for (int j = i + 1; j < g.num_vertices(); ++j) {
      if (realized.at(i, j) != target.at(i, j)) {
        report.first_mismatch = {i, j};
        report.expected = target.at(i, j);
        report.actual = realized.at(i, j);
        return report;
      }
    }
  }
  report.verified = true;
  return report;
}

PulseSequence compose(const PulseSequence& a, const PulseSequence& b) {
  if (a.num_qubits() != b.num_qubits()) throw Error(ErrorKind::dimension_mismatch, "cannot compose sequences of different width");
  PulseSequence out = a;
  for (const auto& op : b.ops()) out.append(op.row, op.strength);
  return out;
}

PulseSequence canonicalize(const PulseSequence& seq) {
  std::vector<PulseOp> merged;
  std::unordered_map<std::uint64_t, std::size_t> slot;
  for (const auto& op : seq.ops()) {
    // Negating a row leaves every product s_i s_j unchanged, so the strengths add.
    FlipRow row = op.row.canonical();
    auto [it, inserted] = slot.emplace(row.mask(), merged.size());
    if (inserted) {
      merged.push_back({row, op.strength});
    } else {
      merged[it->second].strength += op.strength;
    }
  }
  PulseSequence out(seq.num_qubits());
  for (auto& op : merged)
    if (op.strength != 0) out.append(op.row, std::move(op.strength));
  return out;
}

nlohmann::json to_json(const PulseSequence& seq) {
  nlohmann::json ops = nlohmann::json::array();
  for (const auto& op : seq.ops()) ops.push_back({{"mask", op.row.to_string()}, {"w", to_string(op.strength)}});
  return {{"n", seq.num_qubits()}, {"ops", std::move(ops)}};
}

PulseSequence sequence_from_json(const nlohmann::json& j) {
  try {
    PulseSequence seq(j.at("n").get<int>());
    for (const auto& op : j.at("ops")) {
      const auto& w = op.at("w");
      Rational strength = w.is_string() ? parse_rational(w.get<std::string>()) : parse_rational(w.dump());
      seq.append(FlipRow::parse(op.at("mask").get<std::string>()), strength);
    }
    return seq;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse, std::string("pulse JSON: ") + e.what());
  } catch (const Error& e) {
    throw Error(ErrorKind::parse, std::string("pulse JSON: ") + e.what());
  }
}

}  // namespace isingc
