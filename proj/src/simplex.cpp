#include "uccet/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace uccet {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;

struct Tableau {
  int m = 0;     // rows
  int n = 0;     // columns (without rhs)
  int art0 = 0;  // first artificial column
  std::vector<double> a;  // (m+1) x (n+1), row-major; last row objective
  std::vector<int> basis;
  std::vector<char> row_active;

  double& at(int r, int c) { return a[static_cast<size_t>(r) * (n + 1) + c]; }
  double& rhs(int r) { return at(r, n); }

  void pivot(int pr, int pc) {
    const double piv = at(pr, pc);
    const double inv = 1.0 / piv;
    for (int c = 0; c <= n; ++c) at(pr, c) *= inv;
    at(pr, pc) = 1.0;
    for (int r = 0; r <= m; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (int c = 0; c <= n; ++c) at(r, c) -= f * at(pr, c);
      at(r, pc) = 0.0;
    }
    basis[pr] = pc;
  }

  /// Runs simplex on the current objective row. allow(c) gates entering
  /// columns. Returns false when unbounded.
  bool iterate() {
    bool bland = false;
    int since_improve = 0;
    double last_obj = rhs(m);
    const long cap = 2000L * (m + n) + 20000;
    for (long it = 0; it < cap; ++it) {
      int pc = -1;
      if (!bland) {
        double best = -kCostTol;
        for (int c = 0; c < art0; ++c)
          if (at(m, c) < best) {
            best = at(m, c);
            pc = c;
          }
      } else {
        for (int c = 0; c < art0; ++c)
          if (at(m, c) < -kCostTol) {
            pc = c;
            break;
          }
      }
      if (pc < 0) return true;  // optimal

      int pr = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int r = 0; r < m; ++r) {
        if (!row_active[r]) continue;
        const double arc = at(r, pc);
        if (arc > kPivotTol) {
          const double ratio = std::max(rhs(r), 0.0) / arc;
          if (ratio < best_ratio - 1e-12 ||
              (ratio < best_ratio + 1e-12 && (pr < 0 || basis[r] < basis[pr]))) {
            best_ratio = ratio;
            pr = r;
          }
        }
      }
      if (pr < 0) return false;  // unbounded
      pivot(pr, pc);

      if (rhs(m) < last_obj - 1e-12) {
        last_obj = rhs(m);
        since_improve = 0;
      } else if (++since_improve > 2 * (m + 16)) {
        bland = true;  // cycling guard
      }
    }
    throw std::runtime_error("simplex iteration cap exceeded");
  }
};

}  // namespace

LpSolution solve_dense_lp(const DenseLp& lp) {
  const int n0 = lp.n;
  // Shift lower bounds to zero; finite upper bounds become rows.
  std::vector<LpRow> rows = lp.rows;
  for (int j = 0; j < n0; ++j) {
    if (!std::isfinite(lp.lb[j]))
      throw std::invalid_argument("dense LP requires finite lower bounds");
    if (std::isfinite(lp.ub[j])) {
      LpRow r;
      r.coeffs = {{j, 1.0}};
      r.sense = Sense::LE;
      r.rhs = lp.ub[j];
      rows.push_back(std::move(r));
    }
  }
  const int m = static_cast<int>(rows.size());

  // Column layout: structurals, slacks/surplus, artificials.
  int n_slack = 0;
  for (const auto& r : rows)
    if (r.sense != Sense::EQ) ++n_slack;
  std::vector<char> needs_art(m, 0);
  std::vector<double> b(m);
  std::vector<char> flipped(m, 0);
  for (int r = 0; r < m; ++r) {
    double rhs = rows[r].rhs;
    for (const auto& [j, c] : rows[r].coeffs) rhs -= c * lp.lb[j];
    if (rhs < 0) {
      rhs = -rhs;
      flipped[r] = 1;
    }
    b[r] = rhs;
  }
  // After flipping, a <= row becomes >= and vice versa; equalities stay.
  auto effective_sense = [&](int r) {
    if (rows[r].sense == Sense::EQ) return Sense::EQ;
    const bool le = rows[r].sense == Sense::LE;
    return (le != static_cast<bool>(flipped[r])) ? Sense::LE : Sense::GE;
  };
  int n_art = 0;
  for (int r = 0; r < m; ++r) {
    const Sense s = effective_sense(r);
    if (s != Sense::LE) {
      needs_art[r] = 1;
      ++n_art;
    }
  }

  Tableau t;
  t.m = m;
  t.art0 = n0 + n_slack;
  t.n = t.art0 + n_art;
  t.a.assign(static_cast<size_t>(m + 1) * (t.n + 1), 0.0);
  t.basis.assign(m, -1);
  t.row_active.assign(m, 1);

  int slack = n0, art = t.art0;
  for (int r = 0; r < m; ++r) {
    const double sign = flipped[r] ? -1.0 : 1.0;
    for (const auto& [j, c] : rows[r].coeffs) t.at(r, j) += sign * c;
    t.rhs(r) = b[r];
    const Sense s = effective_sense(r);
    if (rows[r].sense != Sense::EQ) {
      t.at(r, slack) = (s == Sense::LE) ? 1.0 : -1.0;
      if (s == Sense::LE) t.basis[r] = slack;
      ++slack;
    }
    if (needs_art[r]) {
      t.at(r, art) = 1.0;
      t.basis[r] = art;
      ++art;
    }
  }

  LpSolution sol;

  // Phase 1: minimize the sum of artificials.
  if (n_art > 0) {
    for (int c = t.art0; c < t.n; ++c) t.at(m, c) = 1.0;
    for (int r = 0; r < m; ++r)
      if (t.basis[r] >= t.art0)
        for (int c = 0; c <= t.n; ++c) t.at(m, c) -= t.at(r, c);
    if (!t.iterate()) throw std::runtime_error("phase 1 unbounded");
    if (-t.rhs(m) > 1e-7 * (1.0 + std::abs(t.rhs(m)))) {
      sol.status = LpStatus::infeasible;
      return sol;
    }
    // Drive remaining artificials out of the basis.
    for (int r = 0; r < m; ++r) {
      if (t.basis[r] < t.art0) continue;
      int pc = -1;
      for (int c = 0; c < t.art0; ++c)
        if (std::abs(t.at(r, c)) > kPivotTol) {
          pc = c;
          break;
        }
      if (pc >= 0)
        t.pivot(r, pc);
      else
        t.row_active[r] = 0;  // redundant row
    }
  }

  // Phase 2: minimize the shifted objective.
  for (int c = 0; c <= t.n; ++c) t.at(m, c) = 0.0;
  for (int j = 0; j < n0; ++j) t.at(m, j) = lp.c[j];
  for (int r = 0; r < m; ++r) {
    if (!t.row_active[r] || t.basis[r] < 0) continue;
    const double cb = t.basis[r] < n0 ? lp.c[t.basis[r]] : 0.0;
    if (cb == 0.0) continue;
    for (int c = 0; c <= t.n; ++c) t.at(m, c) -= cb * t.at(r, c);
  }
  if (!t.iterate()) {
    sol.status = LpStatus::unbounded;
    return sol;
  }

  sol.status = LpStatus::optimal;
  sol.x.assign(n0, 0.0);
  for (int r = 0; r < m; ++r)
    if (t.row_active[r] && t.basis[r] >= 0 && t.basis[r] < n0)
      sol.x[t.basis[r]] = t.rhs(r);
  double shift_cost = 0.0;
  for (int j = 0; j < n0; ++j) {
    sol.x[j] += lp.lb[j];
    shift_cost += lp.c[j] * lp.lb[j];
  }
  sol.objective = -t.rhs(m) + shift_cost;
  // Guard against drift: recompute from the primal point.
  double direct = 0.0;
  for (int j = 0; j < n0; ++j) direct += lp.c[j] * sol.x[j];
  sol.objective = direct;
  return sol;
}

}  // namespace uccet
