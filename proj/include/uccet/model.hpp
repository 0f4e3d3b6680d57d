#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "uccet/decision.hpp"
#include "uccet/instance.hpp"

namespace uccet {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense : char { LE = 'L', EQ = 'E', GE = 'G' };

struct Variable {
  std::string name;
  double lb = -kInf;
  double ub = kInf;
  bool integral = false;
};

/// One sparse linear row. Zero coefficients are never stored; every row
/// carries a provenance tag naming the constraint family and indices.
struct LinearConstraint {
  std::map<int, double> coeffs;
  Sense sense = Sense::LE;
  double rhs = 0.0;
  std::string tag;

  void add(int var, double coef) {
    if (coef == 0.0) return;
    auto [it, inserted] = coeffs.emplace(var, coef);
    if (!inserted) {
      it->second += coef;
      if (it->second == 0.0) coeffs.erase(it);
    }
  }
  double activity(const std::vector<double>& x) const {
    double a = 0.0;
    for (const auto& [j, c] : coeffs) a += c * x[j];
    return a;
  }
  /// Positive when the row is violated at x.
  double violation(const std::vector<double>& x) const {
    const double a = activity(x);
    switch (sense) {
      case Sense::LE: return a - rhs;
      case Sense::GE: return rhs - a;
      case Sense::EQ: return std::abs(a - rhs);
    }
    return 0.0;
  }
};

/// Convex quadratic row: sum q_j x_j^2 + linear <= rhs (diagonal, q_j >= 0).
struct QuadConstraint {
  std::vector<std::pair<int, double>> quad;    // (var, coefficient on x^2)
  std::vector<std::pair<int, double>> linear;  // (var, coefficient)
  double rhs = 0.0;
  std::string tag;

  double activity(const std::vector<double>& x) const {
    double a = 0.0;
    for (const auto& [j, q] : quad) a += q * x[j] * x[j];
    for (const auto& [j, c] : linear) a += c * x[j];
    return a;
  }
};

/// A complete optimization problem over named bounded variables with sparse
/// linear rows, optional convex quadratic rows, and a linear objective.
struct ModelProblem {
  std::string name = "model";
  std::vector<Variable> vars;
  std::vector<LinearConstraint> rows;
  std::vector<QuadConstraint> quad_rows;
  std::vector<std::pair<int, double>> objective;  // sparse linear
  bool maximize = false;

  int add_var(const std::string& name, double lb, double ub, bool integral = false) {
    vars.push_back({name, lb, ub, integral});
    return static_cast<int>(vars.size()) - 1;
  }
  double objective_value(const std::vector<double>& x) const {
    double v = 0.0;
    for (const auto& [j, c] : objective) v += c * x[j];
    return v;
  }
  bool has_integrality() const {
    for (const auto& v : vars)
      if (v.integral) return true;
    return false;
  }
  /// LP, MILP, QCP, or MIQCP by content.
  std::string problem_class() const {
    const bool quad = !quad_rows.empty();
    const bool mip = has_integrality();
    if (quad) return mip ? "MIQCP" : "QCP";
    return mip ? "MILP" : "LP";
  }
  void check_consistent() const;  // throws std::logic_error on bad references
};

/// Maps decision-vector blocks to flat model variable indices in the
/// canonical order u, s, u_b, u_s, p, z, sc, de_b, de_s, eta_cet, then any
/// algorithm extras (r, h) appended by the formulation builders.
class VariableLayout {
 public:
  VariableLayout() = default;
  VariableLayout(int n_units, int horizon);

  int n_units() const { return n_; }
  int horizon() const { return t_; }
  int count() const { return 5 * n_ * t_ + 5; }

  int u(int i, int t) const { return i * t_ + t; }
  int s(int i, int t) const { return n_ * t_ + i * t_ + t; }
  int u_b() const { return 2 * n_ * t_; }
  int u_s() const { return 2 * n_ * t_ + 1; }
  int p(int i, int t) const { return 2 * n_ * t_ + 2 + i * t_ + t; }
  int z(int i, int t) const { return 3 * n_ * t_ + 2 + i * t_ + t; }
  int sc(int i, int t) const { return 4 * n_ * t_ + 2 + i * t_ + t; }
  int de_b() const { return 5 * n_ * t_ + 2; }
  int de_s() const { return 5 * n_ * t_ + 3; }
  int eta() const { return 5 * n_ * t_ + 4; }

  std::string name(int flat_index) const;

  /// Gathers a decision vector from a flat value array (extras ignored).
  DecisionVector unpack(const std::vector<double>& x) const;
  /// Scatters chi into a flat array of at least count() entries.
  void pack(const DecisionVector& chi, std::vector<double>& x) const;

  /// Reads a decision vector out of a name->value primal map; absent
  /// variables default to zero.
  DecisionVector unpack(const std::map<std::string, double>& primal) const;

 private:
  int n_ = 0;
  int t_ = 0;
};

}  // namespace uccet
