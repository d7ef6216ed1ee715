#include "isingc/lp.hpp"

#include <doctest.h>

#include <optional>
#include <random>

using namespace isingc;

namespace {

// Solves the square system B x = b exactly; nullopt when singular.
std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> m, std::vector<Rational> rhs) {
  const int k = static_cast<int>(m.size());
  for (int c = 0; c < k; ++c) {
    int p = c;
    while (p < k && m[p][c] == 0) ++p;
    if (p == k) return std::nullopt;
    std::swap(m[p], m[c]);
    std::swap(rhs[p], rhs[c]);
    for (int r = 0; r < k; ++r) {
      if (r == c || m[r][c] == 0) continue;
      Rational f = m[r][c] / m[c][c];
      for (int j = c; j < k; ++j) m[r][j] -= f * m[c][j];
      rhs[r] -= f * rhs[c];
    }
  }
  for (int r = 0; r < k; ++r) rhs[r] /= m[r][r];
  return rhs;
}

// Minimum over basic feasible solutions; the optimum of a bounded feasible LP
// with full row rank is attained at one of them.
std::optional<Rational> vertex_enumeration(const LinearProgram& lp) {
  std::optional<Rational> best;
  const int n = lp.cols, k = lp.rows;
  for (std::uint32_t subset = 0; subset < (1u << n); ++subset) {
    if (__builtin_popcount(subset) != k) continue;
    std::vector<int> cols;
    for (int j = 0; j < n; ++j)
      if (subset >> j & 1) cols.push_back(j);
    std::vector<std::vector<Rational>> m(k, std::vector<Rational>(k));
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) m[r][c] = lp.at(r, cols[c]);
    auto x = solve_square(m, lp.b);
    if (!x) continue;
    bool feasible = true;
    Rational value = 0;
    for (int c = 0; c < k; ++c) {
      if ((*x)[c] < 0) feasible = false;
      value += lp.c[cols[c]] * (*x)[c];
    }
    if (feasible && (!best || value < *best)) best = value;
  }
  return best;
}

LinearProgram make(int rows, int cols, std::vector<long> a, std::vector<long> b, std::vector<long> c) {
  LinearProgram lp{rows, cols, {}, {}, {}};
  for (long v : a) lp.a.emplace_back(v);
  for (long v : b) lp.b.emplace_back(v);
  for (long v : c) lp.c.emplace_back(v);
  return lp;
}

void check_feasible(const LinearProgram& lp, const LpSolution& s) {
  REQUIRE(s.x.size() == static_cast<std::size_t>(lp.cols));
  Rational obj = 0;
  for (int j = 0; j < lp.cols; ++j) {
    CHECK(s.x[j] >= 0);
    obj += lp.c[j] * s.x[j];
  }
  CHECK(obj == s.objective);
  for (int r = 0; r < lp.rows; ++r) {
    Rational lhs = 0;
    for (int j = 0; j < lp.cols; ++j) lhs += lp.at(r, j) * s.x[j];
    CHECK(lhs == lp.b[r]);
  }
}

}  // namespace

TEST_CASE("small LPs") {
  // min x0 + x1  s.t.  x0 - x1 = 1  ->  1
  auto lp = make(1, 2, {1, -1}, {1}, {1, 1});
  auto s = solve_lp(lp);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.objective == 1);
  check_feasible(lp, s);

  // |w| minimization: w = w+ - w-, w = -3/2 -> 3/2
  LinearProgram half{1, 2, {Rational(2), Rational(-2)}, {Rational(-3)}, {Rational(1), Rational(1)}};
  auto h = solve_lp(half);
  REQUIRE(h.status == LpStatus::optimal);
  CHECK(h.objective == Rational(3, 2));

  auto infeasible = make(2, 2, {1, 1, 1, 1}, {1, 2}, {0, 0});
  CHECK(solve_lp(infeasible).status == LpStatus::infeasible);

  auto negative = make(1, 2, {1, 1}, {-1}, {1, 1});
  CHECK(solve_lp(negative).status == LpStatus::infeasible);

  auto unbounded = make(1, 2, {1, -1}, {0}, {-1, 0});
  CHECK(solve_lp(unbounded).status == LpStatus::unbounded);

  // Redundant equality rows.
  auto redundant = make(2, 3, {1, 1, 0, 2, 2, 0}, {2, 4}, {1, 2, 0});
  auto r = solve_lp(redundant);
  REQUIRE(r.status == LpStatus::optimal);
  CHECK(r.objective == 2);
  check_feasible(redundant, r);
}

TEST_CASE("simplex matches vertex enumeration on random LPs") {
  std::mt19937_64 rng(31);
  int compared = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int rows = 1 + static_cast<int>(rng() % 3);
    const int cols = rows + 1 + static_cast<int>(rng() % 5);
    LinearProgram lp{rows, cols, {}, {}, {}};
    for (int i = 0; i < rows * cols; ++i) lp.a.emplace_back(static_cast<long>(rng() % 7) - 3);
    for (int i = 0; i < rows; ++i) lp.b.emplace_back(static_cast<long>(rng() % 9) - 4);
    // Nonnegative costs keep every feasible problem bounded.
    for (int i = 0; i < cols; ++i) lp.c.emplace_back(static_cast<long>(rng() % 5));
    auto s = solve_lp(lp);
    auto oracle = vertex_enumeration(lp);
    if (s.status == LpStatus::optimal) {
      check_feasible(lp, s);
      // Vertex enumeration needs full row rank; when it finds a basis it must agree.
      if (oracle) {
        CHECK(*oracle == s.objective);
        ++compared;
      }
    } else {
      CHECK(s.status == LpStatus::infeasible);
      CHECK_FALSE(oracle);
    }
  }
  CHECK(compared > 100);
}

TEST_CASE("degenerate LP terminates") {
  // Klee-Minty-like degenerate vertex at the origin.
  auto lp = make(3, 6, {1, 1, 1, 1, 0, 0, 1, -1, 0, 0, 1, 0, 0, 1, -1, 0, 0, 1}, {0, 0, 0}, {-1, -1, -1, 0, 0, 0});
  auto s = solve_lp(lp);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.objective == 0);
}
