#pragma once

#include "isingc/graph.hpp"
#include "isingc/pulse.hpp"

#include <complex>
#include <span>
#include <vector>

namespace isingc {

inline constexpr int kMaxSimQubits = 10;

/// Dense 2^n x 2^n density matrix, row-major. Basis index bit q is qubit q;
/// bit value 0 is the +1 eigenstate of Z.
class DensityMatrix {
 public:
  using Complex = std::complex<double>;

  /// |0...0><0...0|
  explicit DensityMatrix(int n);
  /// |+>^n <+|^n
  static DensityMatrix plus_state(int n);

  int num_qubits() const noexcept { return n_; }
  std::size_t dim() const noexcept { return dim_; }
  const Complex& at(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
  Complex& at(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }

  void apply_x(int q);
  void apply_cnot(int control, int target);
  /// exp(-i theta Z / 2)
  void apply_rz(int q, double theta);
  /// exp(-i theta X / 2)
  void apply_rx(int q, double theta);
  /// U = diag(phases)
  void apply_diagonal(std::span<const Complex> phases);
  /// rho -> (1 - lambda) rho + lambda Tr_Q(rho) (x) I_Q / 2^|Q|
  void apply_depolarizing(std::span<const int> qubits, double lambda);
  /// rho -> (1 - p) rho + p Z rho Z
  void apply_dephasing(int q, double p);

  std::vector<double> probabilities() const;
  Complex trace() const;
  double purity() const;
  /// max |rho_ij - conj(rho_ji)|
  double hermiticity_error() const;

 private:
  void apply_single(int q, const Complex (&u)[2][2]);

  int n_;
  std::size_t dim_;
  std::vector<Complex> data_;
};

DensityMatrix apply_depolarizing(DensityMatrix rho, std::span<const int> qubits, double lambda);

/// Independent classical bit flips with probability p on every qubit of a distribution.
std::vector<double> apply_measurement_flips(std::vector<double> probabilities, int n, double p);

/// Diagonal of C' = sum_e z_e (1 - Z_i Z_j) / 2: the cut value of each basis state.
struct CostOperator {
  int n = 0;
  std::vector<double> diagonal;
};

CostOperator build_cost_operator(const Graph& g);
double maxcut_brute_force(const Graph& g);

enum class Compilation { cx, ms };

/// Major depolarizing rate on CNOTs and global Ising operations; single-qubit
/// gates and measurement see minor errors at minor_ratio times that rate.
struct NoiseSpec {
  double major_rate = 0.0;
  double minor_ratio = 0.1;

  double minor_rate() const { return minor_ratio * major_rate; }
  double measurement_flip() const { return minor_rate(); }
  void validate() const;
};

/// <C'> after one QAOA layer from |+>^n with the cost layer compiled per `compilation`:
///  cx: per edge CNOT(u,v), R_z(-gamma z) on v, CNOT(u,v); each CNOT followed by
///      two-qubit depolarizing, the rotation by minor noise.
///  ms: per row, X on flipped qubits, exp(i gamma w / 2 sum_{i<j} Z_i Z_j) followed by
///      n-qubit depolarizing, X again; every X followed by minor noise.
/// Then exp(-i beta X) on each qubit with minor noise, and measurement flips.
/// Minor noise is single-qubit depolarizing then dephasing, both at the minor rate.
/// `seq` is required for ms and must realize g.
double simulate_qaoa_p1(const Graph& g, Compilation compilation, const PulseSequence* seq, double gamma, double beta,
                        const NoiseSpec& noise);

struct AngleResult {
  double gamma = 0.0;
  double beta = 0.0;
  double expectation = 0.0;
  double ratio = 0.0;
};

/// Grid search over gamma in [0, 2pi) and beta in [0, pi), `resolution` points each.
/// Ties resolve to the smallest (gamma, beta).
AngleResult optimize_angles(const Graph& g, Compilation compilation, const PulseSequence* seq, const NoiseSpec& noise,
                            int resolution = 32);

}  // namespace isingc
