#pragma once

#include <string>
#include <vector>

#include "uccet/backend.hpp"
#include "uccet/cuts.hpp"
#include "uccet/evaluate.hpp"

namespace uccet {

/// The instance admits no point satisfying the linear constraint system.
class InstanceInfeasible : public std::runtime_error {
 public:
  explicit InstanceInfeasible(const std::string& msg) : std::runtime_error(msg) {}
};

/// The quadratic emission residual has no strictly interior point over the
/// linear system, so boundary line searches are impossible.
class NoInteriorPoint : public std::runtime_error {
 public:
  explicit NoInteriorPoint(const std::string& msg) : std::runtime_error(msg) {}
};

class AlgorithmError : public std::runtime_error {
 public:
  explicit AlgorithmError(const std::string& msg) : std::runtime_error(msg) {}
};

struct LaParams {
  double eps_lp = 1e-3;       // residual tolerance for the LP point
  int k_max_lp = 1000;        // max refinement iterations
  double boundary_tol = 1e-9; // |g| target for line-search output
};

struct LaIterRecord {
  int iteration = 0;
  double lp_value = 0.0;
  double g_lp = 0.0;
  double lambda = 0.0;  // 0 when no line search ran this iteration
  int cuts = 0;         // cumulative
};

struct LaResult {
  CutSet omega_r;
  DecisionVector chi_cp;        // interior point, g(chi_cp) < 0
  double g_cp = 0.0;
  DecisionVector chi_lp;        // final LP point
  double relaxation_value = 0.0;
  int iterations = 0;           // LP solves
  bool hit_iteration_cap = false;
  std::vector<LaIterRecord> trace;

  std::string trace_csv() const;
};

/// Minimizes the quadratic residual over the linear system (continuous) and
/// returns the interior point. Throws InstanceInfeasible or NoInteriorPoint.
DecisionVector center_point(const Instance& inst, SolverBackend& backend);

/// Finds the point on segment [exterior, interior] where the quadratic
/// residual vanishes. Requires g(interior) < 0 < g(exterior). The residual
/// is quadratic along the segment so the root is closed-form; bisection
/// covers the degenerate near-linear case. Returns the point and the weight
/// lambda on the interior end.
std::pair<DecisionVector, double> line_search(const Instance& inst,
                                              const DecisionVector& interior,
                                              const DecisionVector& exterior,
                                              double boundary_tol);

/// Full refinement loop: alternate continuous-relaxation LP solves with line
/// searches toward the interior point, accumulating perspective-cut points
/// until the LP optimum satisfies the residual tolerance.
LaResult run_la(const Instance& inst, SolverBackend& backend, const LaParams& params = {});

}  // namespace uccet
