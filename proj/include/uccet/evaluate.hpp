#pragma once

#include <map>
#include <string>
#include <vector>

#include "uccet/decision.hpp"
#include "uccet/instance.hpp"

namespace uccet {

/// Total modeled cost: sum of z + c_hot*s + sc over all unit-periods plus
/// pi_b*de_b - pi_s*de_s. Linear in the point.
double eval_objective(const Instance& inst, const DecisionVector& chi);

/// Quadratic emission residual g = sum_i,t c_n[i] * p(i,t)^2 - eta_cet.
/// Nonpositive g means the emission budget auxiliary covers the quadratic
/// part.
double eval_g(const Instance& inst, const DecisionVector& chi);

/// Gradient of g over the blocks it touches: d/dp(i,t) = 2*c_n[i]*p(i,t) and
/// d/d(eta_cet) = -1. All other blocks have zero derivative.
struct GradG {
  std::vector<double> dp;  // length n_units*horizon
  double deta = -1.0;
};
GradG eval_grad_g(const Instance& inst, const DecisionVector& chi);

/// Audit cost of a committed schedule: exact quadratic production cost in MW
/// terms plus recomputed startup costs and the trading term. Requires a
/// binary-feasible point.
double eval_true_cost(const Instance& inst, const DecisionVector& chi);

/// Per-family constraint check of a full point against the original model.
struct ViolationReport {
  /// Max violation per constraint family (always present, 0 when clean).
  std::map<std::string, double> family_max;
  double tol = 0.0;

  bool clean() const {
    for (const auto& [name, v] : family_max)
      if (v > tol) return false;
    return true;
  }
  double worst() const {
    double w = 0.0;
    for (const auto& [name, v] : family_max) w = std::max(w, v);
    return w;
  }
  /// Families violated beyond tol, worst first.
  std::vector<std::pair<std::string, double>> violations() const;
  std::string to_string() const;
};

/// Evaluates every constraint family of the model (cost epigraph, startup,
/// generation limits, balance, reserve, ramps, min up/down, initial status,
/// state coupling, emission budget, trading caps, exclusivity) at chi.
/// Report-only: never throws on violations.
ViolationReport validate_solution(const Instance& inst, const DecisionVector& chi,
                                  double tol = 1e-6);

}  // namespace uccet
