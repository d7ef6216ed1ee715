#include "isingc/lp.hpp"

#include "isingc/error.hpp"

namespace isingc {
namespace {

// Dense tableau: `rows` constraint rows plus the objective row at index `rows`.
// Column `width - 1` holds the right-hand side.
class Tableau {
 public:
  Tableau(int rows, int cols) : rows_(rows), width_(cols + 1), cells_(static_cast<std::size_t>(rows + 1) * width_) {}

  Rational& at(int r, int c) { return cells_[static_cast<std::size_t>(r) * width_ + c]; }
  Rational& rhs(int r) { return at(r, width_ - 1); }
  int rows() const { return rows_; }
  int cols() const { return width_ - 1; }

  void pivot(int pr, int pc) {
    const Rational inv = 1 / at(pr, pc);
    for (int c = 0; c < width_; ++c)
      if (at(pr, c) != 0) at(pr, c) *= inv;
    for (int r = 0; r <= rows_; ++r) {
      if (r == pr || at(r, pc) == 0) continue;
      const Rational factor = at(r, pc);
      for (int c = 0; c < width_; ++c)
        if (at(pr, c) != 0) at(r, c) -= factor * at(pr, c);
    }
  }

 private:
  int rows_;
  int width_;
  std::vector<Rational> cells_;
};

// Minimizes the objective row over columns [0, active_cols); returns false when unbounded.
bool run_simplex(Tableau& t, std::vector<int>& basis, int active_cols, int& pivots) {
  while (true) {
    int enter = -1;
    for (int c = 0; c < active_cols; ++c) {
      if (t.at(t.rows(), c) < 0) {
        enter = c;
        break;
      }
    }
    if (enter < 0) return true;

    int leave = -1;
    Rational best_ratio;
    for (int r = 0; r < t.rows(); ++r) {
      if (t.at(r, enter) <= 0) continue;
      Rational ratio = t.rhs(r) / t.at(r, enter);
      if (leave < 0 || ratio < best_ratio || (ratio == best_ratio && basis[r] < basis[leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (leave < 0) return false;
    t.pivot(leave, enter);
    basis[leave] = enter;
    ++pivots;
  }
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
  if (lp.a.size() != static_cast<std::size_t>(lp.rows) * lp.cols || lp.b.size() != static_cast<std::size_t>(lp.rows) ||
      lp.c.size() != static_cast<std::size_t>(lp.cols)) {
    throw Error(ErrorKind::dimension_mismatch, "linear program dimensions are inconsistent");
  }
  const int m = lp.rows;
  const int n = lp.cols;
  // Columns: originals [0, n), artificials [n, n + m).
  Tableau t(m, n + m);
  std::vector<int> basis(m);
  for (int r = 0; r < m; ++r) {
    const bool flip = lp.b[r] < 0;
    for (int c = 0; c < n; ++c) t.at(r, c) = flip ? Rational(-lp.at(r, c)) : lp.at(r, c);
    t.at(r, n + r) = 1;
    t.rhs(r) = flip ? Rational(-lp.b[r]) : lp.b[r];
    basis[r] = n + r;
  }
  // Phase 1 objective: sum of artificials, expressed in non-basic terms.
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < n; ++c) t.at(m, c) -= t.at(r, c);
    t.rhs(m) -= t.rhs(r);
  }

  LpSolution sol;
  run_simplex(t, basis, n + m, sol.pivots);
  if (t.rhs(m) != 0) {
    sol.status = LpStatus::infeasible;
    return sol;
  }
  // Drive remaining (zero-level) artificials out of the basis; redundant rows keep theirs.
  for (int r = 0; r < m; ++r) {
    if (basis[r] < n) continue;
    for (int c = 0; c < n; ++c) {
      if (t.at(r, c) != 0) {
        t.pivot(r, c);
        basis[r] = c;
        ++sol.pivots;
        break;
      }
    }
  }

  // Phase 2: artificial columns are frozen out of the entering set.
  for (int c = 0; c <= n + m; ++c) t.at(m, c) = 0;
  for (int c = 0; c < n; ++c) t.at(m, c) = lp.c[c];
  for (int r = 0; r < m; ++r) {
    if (basis[r] >= n) continue;
    const Rational cost = t.at(m, basis[r]);
    if (cost == 0) continue;
    for (int c = 0; c < n; ++c) t.at(m, c) -= cost * t.at(r, c);
    t.rhs(m) -= cost * t.rhs(r);
  }
  if (!run_simplex(t, basis, n, sol.pivots)) {
    sol.status = LpStatus::unbounded;
    return sol;
  }

  sol.status = LpStatus::optimal;
  sol.x.assign(n, 0);
  for (int r = 0; r < m; ++r)
    if (basis[r] < n) sol.x[basis[r]] = t.rhs(r);
  sol.objective = 0;
  for (int c = 0; c < n; ++c) sol.objective += lp.c[c] * sol.x[c];
  return sol;
}

}  // namespace isingc
