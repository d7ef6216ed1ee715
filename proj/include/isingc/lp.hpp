#pragma once

#include "isingc/rational.hpp"

#include <vector>

namespace isingc {

/// min c^T x  subject to  A x = b,  x >= 0   (A is rows x cols, row-major).
struct LinearProgram {
  int rows = 0;
  int cols = 0;
  std::vector<Rational> a;
  std::vector<Rational> b;
  std::vector<Rational> c;

  Rational& at(int r, int col) { return a[static_cast<std::size_t>(r) * cols + col]; }
  const Rational& at(int r, int col) const { return a[static_cast<std::size_t>(r) * cols + col]; }
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  std::vector<Rational> x;
  Rational objective;
  int pivots = 0;
};

/// Exact two-phase dense simplex with Bland's rule (terminates on degenerate problems).
LpSolution solve_lp(const LinearProgram& lp);

}  // namespace isingc
