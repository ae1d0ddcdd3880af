#include "pseudopass/certify.hpp"

#include <algorithm>
#include <cmath>

namespace pseudopass {

namespace {

constexpr double kPivotEps = 1e-11;

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Optimal;
  std::vector<double> x;
  double objective = 0.0;
};

// Dense two-phase tableau simplex for: maximize c.z, A z <= b, z >= 0.
// Bland's rule (smallest index) everywhere, so pivoting is deterministic and
// cycle-free.
class Simplex {
 public:
  Simplex(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
          const std::vector<double>& c)
      : m_(A.size()), n_(c.size()) {
    n_art_ = 0;
    for (double bi : b)
      if (bi < 0.0) ++n_art_;
    cols_ = n_ + m_ + n_art_ + 1;
    rows_.assign(m_, std::vector<double>(cols_, 0.0));
    basis_.resize(m_);
    int art = 0;
    for (size_t i = 0; i < m_; ++i) {
      const double sign = b[i] < 0.0 ? -1.0 : 1.0;
      for (size_t j = 0; j < n_; ++j) rows_[i][j] = sign * A[i][j];
      rows_[i][n_ + i] = sign;  // slack
      rows_[i].back() = sign * b[i];
      if (b[i] < 0.0) {
        const size_t aj = n_ + m_ + art;
        rows_[i][aj] = 1.0;
        basis_[i] = aj;
        ++art;
      } else {
        basis_[i] = n_ + i;
      }
    }
    cost_.assign(cols_, 0.0);
    if (n_art_ > 0) {
      // Phase 1: maximize -sum(artificials); eliminate basic columns.
      for (size_t j = n_ + m_; j + 1 < cols_; ++j) cost_[j] = -1.0;
      for (size_t i = 0; i < m_; ++i)
        if (basis_[i] >= n_ + m_)
          for (size_t j = 0; j < cols_; ++j) cost_[j] += rows_[i][j];
      run(n_ + m_ + n_art_);  // phase 1 is bounded above by zero
      // cost_.back() tracks -objective; a positive leftover means some
      // artificial is still strictly positive, i.e. no feasible point.
      if (cost_.back() > 1e-8) {
        status_ = LpStatus::Infeasible;
        return;
      }
      // Drive leftover artificials out of the basis where possible.
      for (size_t i = 0; i < m_; ++i) {
        if (basis_[i] < n_ + m_) continue;
        size_t enter = cols_;
        for (size_t j = 0; j < n_ + m_; ++j)
          if (std::abs(rows_[i][j]) > kPivotEps) {
            enter = j;
            break;
          }
        if (enter < cols_) pivot(i, enter);
        // An all-zero row keeps its artificial at value zero; harmless.
      }
    }
    // Phase 2 cost.
    std::fill(cost_.begin(), cost_.end(), 0.0);
    for (size_t j = 0; j < n_; ++j) cost_[j] = c[j];
    for (size_t i = 0; i < m_; ++i) {
      const double cb = basis_[i] < n_ ? c[basis_[i]] : 0.0;
      if (cb != 0.0)
        for (size_t j = 0; j < cols_; ++j) cost_[j] -= cb * rows_[i][j];
    }
    if (!run(n_ + m_)) {
      status_ = LpStatus::Unbounded;
      return;
    }
    status_ = LpStatus::Optimal;
  }

  LpResult result() const {
    LpResult out;
    out.status = status_;
    if (status_ != LpStatus::Optimal) return out;
    out.x.assign(n_, 0.0);
    for (size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) out.x[basis_[i]] = rows_[i].back();
    out.objective = -cost_.back();
    return out;
  }

 private:
  // Pivots until no reduced cost is positive, considering only columns below
  // `col_limit` (this keeps artificials out of phase 2). Returns false when
  // the problem is unbounded in the improving direction.
  bool run(size_t col_limit) {
    for (;;) {
      size_t enter = cols_;
      for (size_t j = 0; j < col_limit; ++j)
        if (cost_[j] > kPivotEps) {
          enter = j;
          break;
        }
      if (enter == cols_) return true;
      size_t leave = m_;
      double best_ratio = 0.0;
      for (size_t i = 0; i < m_; ++i) {
        if (rows_[i][enter] <= kPivotEps) continue;
        const double ratio = rows_[i].back() / rows_[i][enter];
        if (leave == m_ || ratio < best_ratio - kPivotEps ||
            (ratio < best_ratio + kPivotEps && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
    }
  }

  void pivot(size_t row, size_t col) {
    const double p = rows_[row][col];
    for (double& v : rows_[row]) v /= p;
    for (size_t i = 0; i < m_; ++i) {
      if (i == row) continue;
      const double f = rows_[i][col];
      if (f == 0.0) continue;
      for (size_t j = 0; j < cols_; ++j) rows_[i][j] -= f * rows_[row][j];
    }
    const double f = cost_[col];
    if (f != 0.0)
      for (size_t j = 0; j < cols_; ++j) cost_[j] -= f * rows_[row][j];
    basis_[row] = col;
  }

  size_t m_, n_, n_art_ = 0, cols_ = 0;
  std::vector<std::vector<double>> rows_;
  std::vector<double> cost_;
  std::vector<size_t> basis_;
  LpStatus status_ = LpStatus::Optimal;
};

LpResult solve_lp_max(const std::vector<std::vector<double>>& A,
                      const std::vector<double>& b, const std::vector<double>& c) {
  return Simplex(A, b, c).result();
}

}  // namespace

ConstraintSet build_constraints(std::span<const TransferSample> samples, int N,
                                ParamKind kind) {
  if (N < 0) throw ValidationError("build_constraints: N must be non-negative");
  ConstraintSet cs;
  cs.N = N;
  cs.kind = kind;
  for (const auto& smp : samples) {
    if (!finite(smp.s) || !finite(smp.w))
      throw ValidationError("build_constraints: non-finite sample");
    if (!(smp.s.real() > 0.0))
      throw ValidationError("build_constraints: sample with Re[s] <= 0");
    const double s2 = std::norm(smp.s);
    const double w2 = std::norm(smp.w);
    std::vector<double> row(cs.dim(), 0.0);
    double s_pow = 1.0;
    for (int j = 0; j <= N; ++j) {
      if (kind == ParamKind::Admittance) {
        row[j] = s_pow;                // c_j
        row[N + 1 + j] = w2 * s_pow;   // d_j
      } else {
        row[j] = (1.0 + w2) * s_pow;                 // F_j
        row[N + 1 + j] = 2.0 * smp.w.real() * s_pow; // G_j
      }
      s_pow *= s2;
    }
    cs.rows.push_back(std::move(row));
    cs.bounds.push_back(kind == ParamKind::Admittance ? smp.w.real() : 1.0 - w2);
  }
  return cs;
}

double check_feasible(const ConstraintSet& cs, std::span<const double> x) {
  if (static_cast<int>(x.size()) != cs.dim())
    throw ValidationError("check_feasible: parameter vector has wrong dimension");
  double margin = inf();
  for (size_t k = 0; k < cs.rows.size(); ++k) {
    double dot = 0.0;
    for (int j = 0; j < cs.dim(); ++j) dot += cs.rows[k][j] * x[j];
    margin = std::min(margin, cs.bounds[k] - dot);
  }
  return margin;
}

FitResult fit_max_margin(const ConstraintSet& cs, const Box& box,
                         FitObjective objective) {
  if (!(box.lo < box.hi) || !std::isfinite(box.lo) || !std::isfinite(box.hi))
    throw ValidationError("fit: invalid box");
  const int n = cs.dim();

  if (cs.rows.empty() && objective == FitObjective::MaxMargin) {
    FitResult out;
    out.status = FitStatus::Degenerate;
    out.x.assign(n, 0.0);
    out.margin = box.hi;
    out.objective = box.hi;
    return out;
  }

  const bool with_t = objective == FitObjective::MaxMargin;
  const int nv = n + (with_t ? 2 : 0);  // shifted x, then t = t+ - t-
  const double span = box.hi - box.lo;

  std::vector<std::vector<double>> A;
  std::vector<double> b;
  // Sample rows: a.x (+ t) <= b, with x = box.lo + xt.
  for (size_t k = 0; k < cs.rows.size(); ++k) {
    std::vector<double> row(nv, 0.0);
    double shift = 0.0;
    for (int j = 0; j < n; ++j) {
      row[j] = cs.rows[k][j];
      shift += cs.rows[k][j] * box.lo;
    }
    if (with_t) {
      row[n] = 1.0;
      row[n + 1] = -1.0;
    }
    A.push_back(std::move(row));
    b.push_back(cs.bounds[k] - shift);
  }
  // Box upper bounds.
  for (int j = 0; j < n; ++j) {
    std::vector<double> row(nv, 0.0);
    row[j] = 1.0;
    A.push_back(std::move(row));
    b.push_back(span);
  }
  // Objective-specific pinning: second block forced to zero.
  if (objective == FitObjective::MaxC0ZeroD) {
    for (int j = cs.N + 1; j < n; ++j) {
      std::vector<double> row(nv, 0.0);
      row[j] = 1.0;
      A.push_back(row);
      b.push_back(-box.lo);
      row[j] = -1.0;
      A.push_back(row);
      b.push_back(box.lo);
    }
    if (!(box.lo <= 0.0 && box.hi >= 0.0))
      throw ValidationError("fit: zero-pinned objective needs 0 inside the box");
  }

  std::vector<double> c(nv, 0.0);
  switch (objective) {
    case FitObjective::MaxMargin:
      c[n] = 1.0;
      c[n + 1] = -1.0;
      break;
    case FitObjective::MaxC0ZeroD:
      c[0] = 1.0;
      break;
    case FitObjective::MaxD0:
      c[cs.N + 1] = 1.0;
      break;
  }

  LpResult lp = solve_lp_max(A, b, c);
  FitResult out;
  if (lp.status == LpStatus::Infeasible) {
    out.status = FitStatus::Infeasible;
    out.x.assign(n, 0.0);
    out.margin = -inf();
    return out;
  }
  if (lp.status == LpStatus::Unbounded)
    throw NumericError("fit: LP unbounded despite box constraints");

  // Lexicographic tie-break: hold the objective at optimal (up to a slack
  // that absorbs roundoff) and minimize the coordinates in order, freezing
  // each at its minimum before moving to the next.
  {
    const double best = lp.objective;
    std::vector<double> obj_row(nv, 0.0);
    for (int j = 0; j < nv; ++j) obj_row[j] = -c[j];
    A.push_back(obj_row);
    b.push_back(-best + 1e-9 * (1.0 + std::abs(best)));
    for (int fixed = 0; fixed < n; ++fixed) {
      std::vector<double> c2(nv, 0.0);
      c2[fixed] = -1.0;  // minimize this coordinate
      LpResult step = solve_lp_max(A, b, c2);
      if (step.status != LpStatus::Optimal) break;
      lp.x = step.x;
      const double low = -step.objective;
      std::vector<double> freeze(nv, 0.0);
      freeze[fixed] = 1.0;
      A.push_back(freeze);
      b.push_back(low + 1e-9 * (1.0 + std::abs(low)));
    }
  }

  out.status = FitStatus::Optimal;
  out.x.assign(n, 0.0);
  for (int j = 0; j < n; ++j) out.x[j] = lp.x[j] + box.lo;
  out.margin = check_feasible(cs, out.x);
  switch (objective) {
    case FitObjective::MaxMargin:
      out.objective = out.margin;
      break;
    case FitObjective::MaxC0ZeroD:
      out.objective = out.x[0];
      break;
    case FitObjective::MaxD0:
      out.objective = out.x[cs.N + 1];
      break;
  }
  for (int j = 0; j < n; ++j)
    if (std::abs(out.x[j] - box.lo) < 1e-9 || std::abs(out.x[j] - box.hi) < 1e-9)
      out.box_active = true;
  for (size_t k = 0; k < cs.rows.size(); ++k) {
    double dot = 0.0;
    for (int j = 0; j < n; ++j) dot += cs.rows[k][j] * out.x[j];
    if (cs.bounds[k] - dot <= out.margin + 1e-9)
      out.active_rows.push_back(static_cast<int>(k));
  }
  return out;
}

bool OracleResult::cell_near(double x1, double x2) const {
  const int i1 = std::clamp(static_cast<int>(std::lround((x1 - grid.lo1) / grid.step)),
                            0, n1 - 1);
  const int i2 = std::clamp(static_cast<int>(std::lround((x2 - grid.lo2) / grid.step)),
                            0, n2 - 1);
  return cell(i1, i2);
}

OracleResult brute_force_oracle(const ConstraintSet& cs, const OracleGrid& grid) {
  if (cs.N != 0) throw ValidationError("brute_force_oracle: only N = 0 is supported");
  if (!(grid.step > 0.0) || !(grid.hi1 >= grid.lo1) || !(grid.hi2 >= grid.lo2))
    throw ValidationError("brute_force_oracle: invalid grid");
  OracleResult out;
  out.grid = grid;
  out.n1 = static_cast<int>(std::lround((grid.hi1 - grid.lo1) / grid.step)) + 1;
  out.n2 = static_cast<int>(std::lround((grid.hi2 - grid.lo2) / grid.step)) + 1;
  out.feasible.assign(static_cast<size_t>(out.n1) * out.n2, 0);

  std::vector<double> best_per_row(out.n1, -inf());
  std::vector<double> best_x2_per_row(out.n1, 0.0);
  std::vector<size_t> count_per_row(out.n1, 0);

  parallel_for(out.n1, [&](size_t i1) {
    const double x1 = grid.lo1 + grid.step * static_cast<double>(i1);
    for (int i2 = 0; i2 < out.n2; ++i2) {
      const double x2 = grid.lo2 + grid.step * static_cast<double>(i2);
      double margin = inf();
      for (size_t k = 0; k < cs.rows.size(); ++k)
        margin = std::min(margin,
                          cs.bounds[k] - cs.rows[k][0] * x1 - cs.rows[k][1] * x2);
      if (margin >= 0.0) {
        out.feasible[i1 * out.n2 + i2] = 1;
        ++count_per_row[i1];
      }
      if (margin > best_per_row[i1]) {
        best_per_row[i1] = margin;
        best_x2_per_row[i1] = x2;
      }
    }
  });

  for (int i1 = 0; i1 < out.n1; ++i1) {
    out.feasible_count += count_per_row[i1];
    if (best_per_row[i1] > out.best_margin) {
      out.best_margin = best_per_row[i1];
      out.best_x1 = grid.lo1 + grid.step * static_cast<double>(i1);
      out.best_x2 = best_x2_per_row[i1];
    }
  }
  return out;
}

}  // namespace pseudopass
