#pragma once

#include <vector>

#include "uccet/model.hpp"

namespace uccet {

/// Small dense LP solver used by the reference (oracle) computations so they
/// stay independent of the external solver path. Not intended for large
/// problems.
struct LpRow {
  std::vector<std::pair<int, double>> coeffs;
  Sense sense = Sense::LE;
  double rhs = 0.0;
};

struct DenseLp {
  int n = 0;
  std::vector<double> c;   // minimize c'x
  std::vector<double> lb;  // finite
  std::vector<double> ub;  // may be +inf
  std::vector<LpRow> rows;

  int add_var(double lower, double upper, double cost = 0.0) {
    lb.push_back(lower);
    ub.push_back(upper);
    c.push_back(cost);
    return n++;
  }
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  double objective = 0.0;
  std::vector<double> x;
};

/// Two-phase dense primal simplex with Bland anti-cycling fallback.
LpSolution solve_dense_lp(const DenseLp& lp);

}  // namespace uccet
