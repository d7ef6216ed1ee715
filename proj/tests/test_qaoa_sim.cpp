#include "isingc/constructions.hpp"
#include "isingc/error.hpp"
#include "isingc/qaoa_sim.hpp"

#include <Eigen/Dense>
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

using namespace isingc;
using Complex = std::complex<double>;

namespace {

// <C'> for e^{-i beta B} e^{-i gamma C'} |+>^n on a state vector, built from
// the cut function directly rather than from gates.
double state_vector_expectation(const Graph& g, double gamma, double beta) {
  const int n = g.num_vertices();
  const std::size_t dim = std::size_t{1} << n;
  std::vector<double> cut(dim, 0.0);
  for (std::size_t b = 0; b < dim; ++b)
    for (const auto& e : g.edges())
      if (((b >> e.u) ^ (b >> e.v)) & 1) cut[b] += to_double(e.weight);
  std::vector<Complex> psi(dim);
  for (std::size_t b = 0; b < dim; ++b) psi[b] = std::polar(1.0 / std::sqrt(static_cast<double>(dim)), -gamma * cut[b]);
  // e^{-i beta X} = cos(beta) I - i sin(beta) X on every qubit.
  const Complex c(std::cos(beta), 0), s(0, -std::sin(beta));
  for (int q = 0; q < n; ++q) {
    const std::size_t m = std::size_t{1} << q;
    for (std::size_t b = 0; b < dim; ++b) {
      if (b & m) continue;
      const Complex a0 = psi[b], a1 = psi[b | m];
      psi[b] = c * a0 + s * a1;
      psi[b | m] = s * a0 + c * a1;
    }
  }
  double e = 0.0;
  for (std::size_t b = 0; b < dim; ++b) e += std::norm(psi[b]) * cut[b];
  return e;
}

double min_eigenvalue(const DensityMatrix& rho) {
  Eigen::MatrixXcd m(rho.dim(), rho.dim());
  for (std::size_t i = 0; i < rho.dim(); ++i)
    for (std::size_t j = 0; j < rho.dim(); ++j) m(i, j) = rho.at(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

void check_state(const DensityMatrix& rho) {
  CHECK(std::abs(rho.trace() - Complex(1, 0)) < 1e-12);
  CHECK(rho.hermiticity_error() < 1e-12);
  CHECK(min_eigenvalue(rho) > -1e-10);
}

double mean_cut(const Graph& g) {
  const auto d = build_cost_operator(g).diagonal;
  double s = 0;
  for (double v : d) s += v;
  return s / static_cast<double>(d.size());
}

NoiseSpec noise_at(double lambda) {
  NoiseSpec n;
  n.major_rate = lambda;
  return n;
}

}  // namespace

TEST_CASE("cost operator examples") {
  CHECK(build_cost_operator(complete_graph(3)).diagonal == std::vector<double>{0, 2, 2, 2, 2, 2, 2, 0});
  CHECK(build_cost_operator(Graph(2, {{0, 1, 1}})).diagonal == std::vector<double>{0, 1, 1, 0});
  CHECK(maxcut_brute_force(path_graph(3)) == 2);
  CHECK(maxcut_brute_force(complete_graph(3)) == 2);
  CHECK(maxcut_brute_force(complete_graph(4)) == 4);
  CHECK(maxcut_brute_force(two_star_example_graph()) == 7);
  CHECK(build_cost_operator(Graph(3, {{0, 2, Rational(1, 2)}})).diagonal[1] == 0.5);
}

TEST_CASE("depolarizing channel") {
  // Bell state (|00> + |11>) / sqrt 2.
  DensityMatrix bell(2);
  bell.at(0, 0) = bell.at(0, 3) = bell.at(3, 0) = bell.at(3, 3) = 0.5;
  const int q0[1] = {0};
  const int both[2] = {0, 1};
  CHECK(bell.purity() == doctest::Approx(1.0));
  auto same = apply_depolarizing(bell, q0, 0.0);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(same.at(i, j) == bell.at(i, j));

  // 0.5 rho + 0.5 I/4: purity 1/4 + 2 * 1/4 * 1/4 + 1/4 * 1/4 = 7/16.
  auto half = apply_depolarizing(bell, q0, 0.5);
  CHECK(half.purity() == doctest::Approx(7.0 / 16.0).epsilon(1e-14));
  check_state(half);

  auto mixed = apply_depolarizing(bell, both, 1.0);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(std::abs(mixed.at(i, j) - Complex(i == j ? 0.25 : 0.0, 0)) < 1e-15);

  const int bad[1] = {2};
  CHECK_THROWS_AS(bell.apply_depolarizing(bad, 0.1), Error);
  CHECK_THROWS_AS(bell.apply_depolarizing(q0, 1.1), Error);
}

TEST_CASE("gates match their matrices on basis states") {
  DensityMatrix rho(2);
  rho.apply_x(0);
  CHECK(rho.at(1, 1) == Complex(1, 0));
  rho.apply_cnot(0, 1);
  CHECK(rho.at(3, 3) == Complex(1, 0));
  rho.apply_x(1);
  rho.apply_cnot(1, 0);
  CHECK(rho.at(1, 1) == Complex(1, 0));
  CHECK_THROWS_AS(rho.apply_cnot(1, 1), Error);

  // Rx(pi) takes |0> to -i|1>; Rz acts as a relative phase e^{i theta} between |1> and |0>.
  DensityMatrix one(1);
  one.apply_rx(0, std::numbers::pi);
  CHECK(std::abs(one.at(1, 1) - Complex(1, 0)) < 1e-15);
  auto plus = DensityMatrix::plus_state(1);
  plus.apply_rz(0, 0.3);
  CHECK(std::abs(plus.at(1, 0) - 0.5 * std::polar(1.0, 0.3)) < 1e-15);
}

TEST_CASE("channels preserve trace, Hermiticity and positivity") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    auto rho = DensityMatrix::plus_state(n);
    for (int step = 0; step < 25; ++step) {
      const int q = static_cast<int>(rng() % n);
      switch (rng() % 7) {
        case 0: rho.apply_x(q); break;
        case 1: rho.apply_rx(q, 6 * unit(rng)); break;
        case 2: rho.apply_rz(q, 6 * unit(rng)); break;
        case 3: if (n > 1) rho.apply_cnot(q, (q + 1) % n); break;
        case 4: rho.apply_dephasing(q, unit(rng)); break;
        case 5: {
          std::vector<int> qs;
          for (int k = 0; k < n; ++k)
            if (rng() & 1) qs.push_back(k);
          rho.apply_depolarizing(qs, unit(rng));
          break;
        }
        default: {
          std::vector<Complex> phases(rho.dim());
          for (auto& p : phases) p = std::polar(1.0, 6 * unit(rng));
          rho.apply_diagonal(phases);
        }
      }
      check_state(rho);
    }
    auto probs = apply_measurement_flips(rho.probabilities(), n, unit(rng));
    double total = 0;
    for (double p : probs) {
      CHECK(p >= -1e-15);
      total += p;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("measurement flips") {
  auto uniform = apply_measurement_flips({1, 0, 0, 0}, 2, 0.5);
  for (double p : uniform) CHECK(p == doctest::Approx(0.25));
  auto swapped = apply_measurement_flips({1, 0}, 1, 1.0);
  CHECK(swapped == std::vector<double>{0, 1});
  CHECK(apply_measurement_flips({0.3, 0.7}, 1, 0.0) == std::vector<double>{0.3, 0.7});
  CHECK_THROWS_AS(apply_measurement_flips({1, 0}, 1, -0.1), Error);
}

TEST_CASE("zero noise: CX, MS and a state-vector oracle agree") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  const std::vector<Rational> weights{1, 2, 3};
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const bool weighted = trial % 2;
    auto g = random_er_graph(n, 0.6, weighted ? std::span<const Rational>(weights) : std::span<const Rational>(), rng());
    const auto seq = weighted ? weighted_edge_by_edge(g) : union_of_stars(g);
    const double gamma = angle(rng), beta = angle(rng) / 2;
    const double cx = simulate_qaoa_p1(g, Compilation::cx, nullptr, gamma, beta, {});
    const double ms = simulate_qaoa_p1(g, Compilation::ms, &seq, gamma, beta, {});
    const double sv = state_vector_expectation(g, gamma, beta);
    CHECK(std::abs(cx - ms) < 1e-9);
    CHECK(std::abs(cx - sv) < 1e-10);
    CHECK(std::abs(ms - sv) < 1e-10);
  }
}

TEST_CASE("simulate_qaoa_p1 examples") {
  auto fig1 = two_star_example_graph();
  auto seq = union_of_stars(fig1);
  for (double gamma : {0.3, 1.1, 2.9})
    CHECK(std::abs(simulate_qaoa_p1(fig1, Compilation::cx, nullptr, gamma, 0.4, {}) -
                   simulate_qaoa_p1(fig1, Compilation::ms, &seq, gamma, 0.4, {})) < 1e-9);

  const Graph w(4, {{0, 1, 2}, {1, 3, 3}, {0, 2, 1}});
  CHECK(simulate_qaoa_p1(w, Compilation::cx, nullptr, 0, 0, {}) == doctest::Approx(3.0));
  CHECK(simulate_qaoa_p1(w, Compilation::cx, nullptr, 0, 0, noise_at(0.3)) == doctest::Approx(3.0));

  PulseSequence one_row(3);
  one_row.append(FlipRow::all_plus(3), 1);
  for (double gamma : {0.0, 0.7, 2.0})
    CHECK(simulate_qaoa_p1(complete_graph(3), Compilation::ms, &one_row, gamma, 0.3, noise_at(1.0)) ==
          doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("full noise drives MS to the mean cut") {
  const std::vector<Rational> weights{1, 2, 3};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto g = random_er_graph(5, 0.6, weights, seed);
    if (g.num_edges() == 0) continue;
    auto seq = weighted_edge_by_edge(g);
    const double e = simulate_qaoa_p1(g, Compilation::ms, &seq, 0.9, 0.4, noise_at(1.0));
    CHECK(std::abs(e / maxcut_brute_force(g) - mean_cut(g) / maxcut_brute_force(g)) < 1e-9);
  }
}

TEST_CASE("simulate_qaoa_p1 errors") {
  auto g = path_graph(3);
  auto wrong = union_of_stars(complete_graph(3));
  CHECK_THROWS_AS(simulate_qaoa_p1(g, Compilation::ms, nullptr, 0.1, 0.1, {}), Error);
  CHECK_THROWS_AS(simulate_qaoa_p1(g, Compilation::ms, &wrong, 0.1, 0.1, {}), Error);
  CHECK_THROWS_AS(simulate_qaoa_p1(g, Compilation::cx, nullptr, std::numeric_limits<double>::quiet_NaN(), 0.1, {}),
                  Error);
  CHECK_THROWS_AS(simulate_qaoa_p1(g, Compilation::cx, nullptr, 0.1, INFINITY, {}), Error);
  CHECK_THROWS_AS(simulate_qaoa_p1(g, Compilation::cx, nullptr, 0.1, 0.1, noise_at(1.5)), Error);
  CHECK_THROWS_AS(simulate_qaoa_p1(complete_graph(11), Compilation::cx, nullptr, 0.1, 0.1, {}), Error);
  CHECK_THROWS_AS(optimize_angles(g, Compilation::cx, nullptr, {}, 4), Error);
}

TEST_CASE("optimize_angles") {
  const Graph edge(2, {{0, 1, 1}});
  auto r = optimize_angles(edge, Compilation::cx, nullptr, {}, 32);
  CHECK(r.ratio == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.expectation == doctest::Approx(1.0).epsilon(1e-9));

  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    auto g = random_er_graph(4, 0.6, {}, rng());
    if (g.num_edges() == 0) continue;
    auto seq = union_of_stars(g);
    CHECK(optimize_angles(g, Compilation::cx, nullptr, {}, 8).ratio >= 0.5 - 1e-12);
    CHECK(optimize_angles(g, Compilation::ms, &seq, {}, 8).ratio >= 0.5 - 1e-12);
  }

  // Every grid point ties on the empty graph, so the first one wins.
  auto flat = optimize_angles(Graph(3, {}), Compilation::cx, nullptr, {}, 8);
  CHECK(flat.gamma == 0.0);
  CHECK(flat.beta == 0.0);
}

TEST_CASE("K_4 ratio does not increase with noise") {
  auto g = complete_graph(4);
  auto seq = union_of_stars(g);
  for (auto comp : {Compilation::cx, Compilation::ms}) {
    double last = 2.0;
    for (double lambda : {0.0, 0.001, 0.002, 0.005, 0.01, 0.02, 0.05}) {
      const double ratio = optimize_angles(g, comp, &seq, noise_at(lambda), 16).ratio;
      CHECK(ratio <= last + 1e-6);
      last = ratio;
    }
  }
}
