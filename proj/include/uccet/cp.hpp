#pragma once

#include <optional>
#include <string>
#include <vector>

#include "uccet/la.hpp"

namespace uccet {

struct CpParams {
  double eps_r = 1e-3;
  double eps_g = 1e-3;
  double eps_h = 1e-3;
  int max_milp_iters = 100;
  double time_limit = 600.0;               // seconds, whole run
  std::optional<double> mu_fixed;          // overrides the schedule when set
  double r_cap = 1e6;                      // keeps the center problem bounded
};

/// Ellipsoid factor schedule: mu(k) = 1 / (1 + 1e3 * exp(-3k)), strictly
/// increasing toward 1.
double mu_schedule(int k);

enum class CpTermination { optimal_by_r, iteration_limit, time_limit };

const char* to_string(CpTermination t);

struct CpIterRecord {
  int k = 0;
  double mu = 0.0;
  double r_hat = 0.0;
  double g_icp = 0.0;
  double h = 0.0;  // NaN when no adjustment ran; +inf marks fixed-u infeasibility
  std::string action;
  double incumbent_obj = 0.0;  // NaN until the first incumbent
  double cum_time_s = 0.0;
};

struct CpResult {
  std::optional<DecisionVector> best;
  double best_objective = 0.0;
  IncumbentSet omega_f;
  CutSet omega_r;
  CpTermination termination = CpTermination::iteration_limit;
  std::vector<CpIterRecord> trace;
  double la_relaxation_value = 0.0;  // continuous-relaxation value after LA
  int la_cuts = 0;
  double total_time_s = 0.0;
  std::vector<std::string> notes;

  std::string trace_csv() const;
};

/// Center MILP: maximize the inscribed radius r over the linear system,
/// integrality, the radius-inflated cuts at every stored point, and (once an
/// incumbent exists) the incumbent-exclusion row.
std::pair<DecisionVector, double> integer_ellipsoid_center(
    const Instance& inst, const CutSet& omega_r, const IncumbentSet& omega_f,
    double mu, double r_cap, SolverBackend& backend, double time_limit = 600.0);

/// Minimum achievable quadratic residual with every commitment/trading
/// variable fixed from chi. Returns {h, argmin}; h is +inf when even the
/// linear system rejects the fixing (message explains).
std::pair<double, DecisionVector> feasibility_adjustment(const Instance& inst,
                                                         const DecisionVector& chi,
                                                         SolverBackend& backend,
                                                         double time_limit = 600.0);

/// Cost-minimal dispatch with commitment/trading fixed from chi, subject to
/// the exact quadratic emission row. Empty when the fixing admits no
/// feasible dispatch (tolerance races are possible and reported).
std::optional<DecisionVector> fixed_integer_search(const Instance& inst,
                                                   const DecisionVector& chi,
                                                   SolverBackend& backend,
                                                   double time_limit = 600.0);

/// Full run: LA first, then center-MILP iterations with feasibility
/// adjustment and fixed-integer neighborhood searches until the inscribed
/// radius collapses or a limit is hit.
CpResult run_cp(const Instance& inst, SolverBackend& backend,
                const LaParams& la_params = {}, const CpParams& cp_params = {});

}  // namespace uccet
