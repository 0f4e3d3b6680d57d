#pragma once

#include <optional>
#include <vector>

#include "uccet/evaluate.hpp"
#include "uccet/model.hpp"

namespace uccet {

/// Linearization points on the boundary of the quadratic emission residual.
/// Points arrive either from line searches (|g| within the boundary
/// tolerance) or promoted from integer-feasible incumbents with g ~ 0.
struct CutSet {
  struct Entry {
    DecisionVector point;
    bool promoted = false;
  };
  std::vector<Entry> points;

  void add(DecisionVector point, bool promoted = false) {
    points.push_back({std::move(point), promoted});
  }
  bool empty() const { return points.empty(); }
  int size() const { return static_cast<int>(points.size()); }
};

/// Integer-feasible solutions found so far, with the running best.
struct IncumbentSet {
  struct Entry {
    DecisionVector point;
    double objective = 0.0;
  };
  std::vector<Entry> solutions;
  int best = -1;

  void add(DecisionVector point, double objective) {
    solutions.push_back({std::move(point), objective});
    if (best < 0 || objective < solutions[best].objective)
      best = static_cast<int>(solutions.size()) - 1;
  }
  bool empty() const { return solutions.empty(); }
  double best_objective() const { return solutions[best].objective; }
  const DecisionVector& best_point() const { return solutions[best].point; }
};

/// Supporting-hyperplane row for g at chi_hat:
///   sum 2*c_n*p_hat * p  -  eta  <=  sum c_n*p_hat^2.
LinearConstraint tangent_cut(const Instance& inst, const VariableLayout& layout,
                             const DecisionVector& chi_hat,
                             const std::string& tag = "");

/// Perspective strengthening of the tangent row: the constant term is
/// multiplied onto the commitment variables, which dominates the tangent for
/// fractional u and coincides with it at u = 1:
///   sum [2*c_n*p_hat * p - c_n*p_hat^2 * u] - eta <= 0.
LinearConstraint perspective_cut(const Instance& inst, const VariableLayout& layout,
                                 const DecisionVector& chi_hat,
                                 const std::string& tag = "");

/// Euclidean norm of the perspective row's coefficient vector (over the u,
/// p, and eta entries). Always >= 1 because eta carries coefficient -1.
double perspective_gradient_norm(const Instance& inst, const DecisionVector& chi_hat);

/// Euclidean norm of the objective's coefficient vector.
double objective_gradient_norm(const Instance& inst);

/// Perspective cut inflated by an inscribed-radius variable r:
///   perspective-lhs + mu * ||grad|| * r <= 0.
/// The r = 0 slice reproduces the plain perspective cut.
LinearConstraint inflated_nl_cut(const Instance& inst, const VariableLayout& layout,
                                 const DecisionVector& chi_hat, double mu,
                                 int r_index, const std::string& tag = "");

/// Incumbent-exclusion row:
///   objective(chi) + (1/mu) * ||grad objective|| * r <= best incumbent.
/// Returns nothing while no incumbent exists.
std::optional<LinearConstraint> objective_cut(const Instance& inst,
                                              const VariableLayout& layout,
                                              const IncumbentSet& incumbents,
                                              double mu, int r_index);

/// K emission cuts at evenly spaced breakpoints p = k/(K-1), k = 0..K-1,
/// in tangent form (perspective = false) or perspective form.
std::vector<LinearConstraint> build_piecewise_emission(const Instance& inst,
                                                       const VariableLayout& layout,
                                                       int breakpoints,
                                                       bool perspective);

}  // namespace uccet
