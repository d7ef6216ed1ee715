#include "isingc/qaoa_sim.hpp"

#include "isingc/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace isingc {

using Complex = DensityMatrix::Complex;

DensityMatrix::DensityMatrix(int n) : n_(n), dim_(std::size_t{1} << n) {
  if (n < 1 || n > kMaxSimQubits) {
    throw Error(ErrorKind::too_large, "density-matrix simulation supports 1 <= n <= " + std::to_string(kMaxSimQubits));
  }
  data_.assign(dim_ * dim_, Complex{});
  data_[0] = 1.0;
}

DensityMatrix DensityMatrix::plus_state(int n) {
  DensityMatrix rho(n);
  std::fill(rho.data_.begin(), rho.data_.end(), Complex(1.0 / static_cast<double>(rho.dim_), 0.0));
  return rho;
}

void DensityMatrix::apply_x(int q) {
  const std::size_t m = std::size_t{1} << q;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (i & m) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      // Swap rows i and i^m.
      std::swap(at(i, j), at(i | m, j));
    }
  }
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      if (!(j & m)) std::swap(at(i, j), at(i, j | m));
}

void DensityMatrix::apply_cnot(int control, int target) {
  if (control == target) throw Error(ErrorKind::invalid_argument, "CNOT control equals target");
  const std::size_t c = std::size_t{1} << control;
  const std::size_t t = std::size_t{1} << target;
  auto perm = [&](std::size_t i) { return (i & c) ? i ^ t : i; };
  std::vector<Complex> out(data_.size());
  for (std::size_t i = 0; i < dim_; ++i) {
    const std::size_t pi = perm(i);
    for (std::size_t j = 0; j < dim_; ++j) out[i * dim_ + j] = at(pi, perm(j));
  }
  data_.swap(out);
}

void DensityMatrix::apply_single(int q, const Complex (&u)[2][2]) {
  const std::size_t m = std::size_t{1} << q;
  // rho <- U rho
  for (std::size_t i = 0; i < dim_; ++i) {
    if (i & m) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      const Complex a = at(i, j);
      const Complex b = at(i | m, j);
      at(i, j) = u[0][0] * a + u[0][1] * b;
      at(i | m, j) = u[1][0] * a + u[1][1] * b;
    }
  }
  // rho <- rho U^dagger
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      if (j & m) continue;
      const Complex a = at(i, j);
      const Complex b = at(i, j | m);
      at(i, j) = a * std::conj(u[0][0]) + b * std::conj(u[0][1]);
      at(i, j | m) = a * std::conj(u[1][0]) + b * std::conj(u[1][1]);
    }
  }
}

void DensityMatrix::apply_rz(int q, double theta) {
  std::vector<Complex> phases(dim_);
  const Complex down = std::polar(1.0, -theta / 2);
  const Complex up = std::polar(1.0, theta / 2);
  for (std::size_t i = 0; i < dim_; ++i) phases[i] = (i >> q & 1U) ? up : down;
  apply_diagonal(phases);
}

void DensityMatrix::apply_rx(int q, double theta) {
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  const Complex u[2][2] = {{Complex(c, 0), Complex(0, -s)}, {Complex(0, -s), Complex(c, 0)}};
  apply_single(q, u);
}

void DensityMatrix::apply_diagonal(std::span<const Complex> phases) {
  if (phases.size() != dim_) throw Error(ErrorKind::dimension_mismatch, "diagonal unitary has wrong size");
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) at(i, j) *= phases[i] * std::conj(phases[j]);
}

void DensityMatrix::apply_depolarizing(std::span<const int> qubits, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw Error(ErrorKind::invalid_argument, "depolarizing rate must lie in [0, 1]");
  std::size_t support = 0;
  for (int q : qubits) {
    if (q < 0 || q >= n_) throw Error(ErrorKind::invalid_argument, "depolarizing qubit out of range");
    support |= std::size_t{1} << q;
  }
  if (lambda == 0.0 || support == 0) return;
  const double weight = 1.0 / static_cast<double>(std::size_t{1} << std::popcount(support));

  // reduced[i, j] for i, j with zero support bits: sum over matching support states.
  std::vector<Complex> reduced(data_.size(), Complex{});
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      if ((i & support) == (j & support)) reduced[(i & ~support) * dim_ + (j & ~support)] += at(i, j);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      Complex replaced{};
      if ((i & support) == (j & support)) replaced = weight * reduced[(i & ~support) * dim_ + (j & ~support)];
      at(i, j) = (1.0 - lambda) * at(i, j) + lambda * replaced;
    }
  }
}

void DensityMatrix::apply_dephasing(int q, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::invalid_argument, "dephasing rate must lie in [0, 1]");
  const std::size_t m = std::size_t{1} << q;
  const double keep = 1.0 - 2.0 * p;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      if ((i ^ j) & m) at(i, j) *= keep;
}

std::vector<double> DensityMatrix::probabilities() const {
  std::vector<double> p(dim_);
  for (std::size_t i = 0; i < dim_; ++i) p[i] = at(i, i).real();
  return p;
}

Complex DensityMatrix::trace() const {
  Complex t{};
  for (std::size_t i = 0; i < dim_; ++i) t += at(i, i);
  return t;
}

double DensityMatrix::purity() const {
  // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return s;
}

double DensityMatrix::hermiticity_error() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i; j < dim_; ++j) worst = std::max(worst, std::abs(at(i, j) - std::conj(at(j, i))));
  return worst;
}

DensityMatrix apply_depolarizing(DensityMatrix rho, std::span<const int> qubits, double lambda) {
  rho.apply_depolarizing(qubits, lambda);
  return rho;
}

std::vector<double> apply_measurement_flips(std::vector<double> probabilities, int n, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::invalid_argument, "flip probability must lie in [0, 1]");
  if (p == 0.0) return probabilities;
  for (int q = 0; q < n; ++q) {
    const std::size_t m = std::size_t{1} << q;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
      if (i & m) continue;
      const double a = probabilities[i];
      const double b = probabilities[i | m];
      probabilities[i] = (1 - p) * a + p * b;
      probabilities[i | m] = p * a + (1 - p) * b;
    }
  }
  return probabilities;
}

CostOperator build_cost_operator(const Graph& g) {
  CostOperator op{g.num_vertices(), {}};
  if (g.num_vertices() > 30) throw Error(ErrorKind::too_large, "cost operator supports n <= 30");
  const std::size_t dim = std::size_t{1} << g.num_vertices();
  op.diagonal.assign(dim, 0.0);
  std::vector<std::pair<std::pair<int, int>, double>> edges;
  for (const auto& e : g.edges()) edges.push_back({{e.u, e.v}, to_double(e.weight)});
  for (std::size_t b = 0; b < dim; ++b) {
    double cut = 0.0;
    for (const auto& [uv, w] : edges)
      if (((b >> uv.first) ^ (b >> uv.second)) & 1U) cut += w;
    op.diagonal[b] = cut;
  }
  return op;
}

double maxcut_brute_force(const Graph& g) {
  if (g.num_vertices() > 20) throw Error(ErrorKind::too_large, "brute-force Max-Cut supports n <= 20");
  const auto op = build_cost_operator(g);
  return *std::max_element(op.diagonal.begin(), op.diagonal.end());
}

void NoiseSpec::validate() const {
  if (!(major_rate >= 0.0 && major_rate <= 1.0)) throw Error(ErrorKind::invalid_argument, "noise rate must lie in [0, 1]");
  if (!(minor_ratio >= 0.0 && minor_rate() <= 1.0)) throw Error(ErrorKind::invalid_argument, "minor noise ratio out of range");
}

namespace {

void minor_noise(DensityMatrix& rho, int q, const NoiseSpec& noise) {
  const double p = noise.minor_rate();
  if (p == 0.0) return;
  const int qs[1] = {q};
  rho.apply_depolarizing(qs, p);
  rho.apply_dephasing(q, p);
}

void check_inputs(const Graph& g, Compilation compilation, const PulseSequence* seq, const NoiseSpec& noise) {
  noise.validate();
  if (compilation == Compilation::ms) {
    if (seq == nullptr) throw Error(ErrorKind::invalid_argument, "MS compilation needs a pulse sequence");
    if (!verify(*seq, g)) throw Error(ErrorKind::invalid_argument, "pulse sequence does not realize the graph");
  }
}

// State after the cost layer for angle gamma.
DensityMatrix cost_layer(const Graph& g, Compilation compilation, const PulseSequence* seq, double gamma,
                         const NoiseSpec& noise) {
  const int n = g.num_vertices();
  DensityMatrix rho = DensityMatrix::plus_state(n);
  const double major = noise.major_rate;
  if (compilation == Compilation::cx) {
    for (const auto& e : g.edges()) {
      const int pair[2] = {e.u, e.v};
      rho.apply_cnot(e.u, e.v);
      rho.apply_depolarizing(pair, major);
      rho.apply_rz(e.v, -gamma * to_double(e.weight));
      minor_noise(rho, e.v, noise);
      rho.apply_cnot(e.u, e.v);
      rho.apply_depolarizing(pair, major);
    }
    return rho;
  }

  std::vector<int> everyone(n);
  for (int q = 0; q < n; ++q) everyone[q] = q;
  // sum_{i<j} Z_i Z_j per basis state.
  std::vector<double> zz(rho.dim());
  for (std::size_t b = 0; b < rho.dim(); ++b) {
    const int ones = std::popcount(b);
    const int net = n - 2 * ones;  // sum of Z eigenvalues
    zz[b] = (static_cast<double>(net) * net - n) / 2.0;
  }
  std::vector<Complex> phases(rho.dim());
  for (const auto& op : seq->ops()) {
    const double w = to_double(op.strength);
    auto flip = [&] {
      for (int q = 0; q < n; ++q) {
        if (op.row.sign(q) > 0) continue;
        rho.apply_x(q);
        minor_noise(rho, q, noise);
      }
    };
    flip();
    for (std::size_t b = 0; b < rho.dim(); ++b) phases[b] = std::polar(1.0, gamma * w / 2.0 * zz[b]);
    rho.apply_diagonal(phases);
    rho.apply_depolarizing(everyone, major);
    flip();
  }
  return rho;
}

double finish(DensityMatrix rho, const CostOperator& cost, double beta, const NoiseSpec& noise) {
  for (int q = 0; q < rho.num_qubits(); ++q) {
    rho.apply_rx(q, 2.0 * beta);
    minor_noise(rho, q, noise);
  }
  const auto probs = apply_measurement_flips(rho.probabilities(), rho.num_qubits(), noise.measurement_flip());
  double e = 0.0;
  for (std::size_t b = 0; b < probs.size(); ++b) e += probs[b] * cost.diagonal[b];
  return e;
}

}  // namespace

double simulate_qaoa_p1(const Graph& g, Compilation compilation, const PulseSequence* seq, double gamma, double beta,
                        const NoiseSpec& noise) {
  if (!std::isfinite(gamma) || !std::isfinite(beta)) throw Error(ErrorKind::invalid_argument, "QAOA angles must be finite");
  check_inputs(g, compilation, seq, noise);
  return finish(cost_layer(g, compilation, seq, gamma, noise), build_cost_operator(g), beta, noise);
}

AngleResult optimize_angles(const Graph& g, Compilation compilation, const PulseSequence* seq, const NoiseSpec& noise,
                            int resolution) {
  if (resolution < 8) throw Error(ErrorKind::invalid_argument, "angle grid resolution must be at least 8");
  check_inputs(g, compilation, seq, noise);
  const auto cost = build_cost_operator(g);
  const double best_cut = *std::max_element(cost.diagonal.begin(), cost.diagonal.end());
  AngleResult best;
  bool first = true;
  for (int k = 0; k < resolution; ++k) {
    const double gamma = 2.0 * std::numbers::pi * k / resolution;
    const DensityMatrix after_cost = cost_layer(g, compilation, seq, gamma, noise);
    for (int l = 0; l < resolution; ++l) {
      const double beta = std::numbers::pi * l / resolution;
      const double e = finish(after_cost, cost, beta, noise);
      if (first || e > best.expectation + 1e-12) {
        best = {gamma, beta, e, 0.0};
        first = false;
      }
    }
  }
  best.ratio = best_cut > 0 ? best.expectation / best_cut : 1.0;
  return best;
}

}  // namespace isingc
