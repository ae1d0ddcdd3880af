#pragma once

#include <span>
#include <string>
#include <vector>

#include "pseudopass/laplace.hpp"

namespace pseudopass {

enum class ParamKind { Admittance, Scattering };

// One linear row a.x <= b per transfer sample, x = (c_0..c_N, d_0..d_N) or
// (F_0..F_N, G_0..G_N):
//   admittance  sum_j |s|^{2j} c_j + |w|^2 sum_j |s|^{2j} d_j  <=  Re[w]
//   scattering  (1+|w|^2) sum_j |s|^{2j} F_j + 2 Re[w] sum_j |s|^{2j} G_j  <=  1-|w|^2
struct ConstraintSet {
  int N = 0;
  ParamKind kind = ParamKind::Admittance;
  std::vector<std::vector<double>> rows;  // each of length 2(N+1)
  std::vector<double> bounds;

  int dim() const { return 2 * (N + 1); }
  size_t size() const { return rows.size(); }
};

ConstraintSet build_constraints(std::span<const TransferSample> samples, int N,
                                ParamKind kind);

// min over rows of (b - a.x); +infinity when there are no rows. x certifies
// the sampled data iff the result is >= 0.
double check_feasible(const ConstraintSet& cs, std::span<const double> x);

struct Box {
  double lo = -1e3;
  double hi = 1e3;
};

enum class FitObjective {
  MaxMargin,   // max_x min_k (b_k - a_k.x)
  MaxC0ZeroD,  // max x[0] with the whole second block pinned to zero
  MaxD0,       // max x[N+1]
};

enum class FitStatus { Optimal, Infeasible, Degenerate };

struct FitResult {
  FitStatus status = FitStatus::Optimal;
  std::vector<double> x;      // fitted parameter vector
  double margin = 0.0;        // min over rows of (b - a.x) at x
  double objective = 0.0;     // value of the chosen objective
  bool box_active = false;    // some coordinate sits on the box boundary
  std::vector<int> active_rows;
};

// Solves the chosen LP over the box with a dense two-phase simplex (Bland's
// rule); among optima the lexicographically smallest x is returned. With no
// rows the problem is reported Degenerate with margin = box.hi.
FitResult fit_max_margin(const ConstraintSet& cs, const Box& box = {},
                         FitObjective objective = FitObjective::MaxMargin);

struct OracleGrid {
  double lo1 = -2.0, hi1 = 2.0;
  double lo2 = -2.0, hi2 = 2.0;
  double step = 1e-3;
};

// Exhaustive feasibility scan over a 2-parameter grid; validates the LP for
// N = 0 problems.
struct OracleResult {
  OracleGrid grid;
  int n1 = 0, n2 = 0;
  std::vector<uint8_t> feasible;  // row-major [i1 * n2 + i2]
  size_t feasible_count = 0;
  double best_margin = -inf();
  double best_x1 = 0.0, best_x2 = 0.0;

  bool cell(int i1, int i2) const { return feasible[static_cast<size_t>(i1) * n2 + i2] != 0; }
  bool cell_near(double x1, double x2) const;  // nearest grid cell
};

OracleResult brute_force_oracle(const ConstraintSet& cs, const OracleGrid& grid = {});

}  // namespace pseudopass
