#include "uccet/cuts.hpp"

#include <cmath>
#include <stdexcept>

namespace uccet {

namespace {

void check_shape(const Instance& inst, const DecisionVector& chi) {
  if (!chi.shape_matches(inst.n_units(), inst.horizon()))
    throw std::invalid_argument("cut point shape does not match instance");
}

}  // namespace

LinearConstraint tangent_cut(const Instance& inst, const VariableLayout& layout,
                             const DecisionVector& chi_hat, const std::string& tag) {
  check_shape(inst, chi_hat);
  LinearConstraint row;
  row.sense = Sense::LE;
  row.tag = tag.empty() ? "emission-tangent" : tag;
  double constant = 0.0;
  for (int i = 0; i < inst.n_units(); ++i) {
    const double c = inst.derived[i].c_n;
    for (int t = 0; t < inst.horizon(); ++t) {
      const double ph = chi_hat.p[chi_hat.at(i, t)];
      row.add(layout.p(i, t), 2.0 * c * ph);
      constant += c * ph * ph;
    }
  }
  row.add(layout.eta(), -1.0);
  row.rhs = constant;
  return row;
}

LinearConstraint perspective_cut(const Instance& inst, const VariableLayout& layout,
                                 const DecisionVector& chi_hat, const std::string& tag) {
  check_shape(inst, chi_hat);
  LinearConstraint row;
  row.sense = Sense::LE;
  row.tag = tag.empty() ? "emission-psp" : tag;
  for (int i = 0; i < inst.n_units(); ++i) {
    const double c = inst.derived[i].c_n;
    for (int t = 0; t < inst.horizon(); ++t) {
      const double ph = chi_hat.p[chi_hat.at(i, t)];
      row.add(layout.p(i, t), 2.0 * c * ph);
      row.add(layout.u(i, t), -c * ph * ph);
    }
  }
  row.add(layout.eta(), -1.0);
  row.rhs = 0.0;
  return row;
}

double perspective_gradient_norm(const Instance& inst, const DecisionVector& chi_hat) {
  check_shape(inst, chi_hat);
  double sq = 1.0;  // eta coefficient
  for (int i = 0; i < inst.n_units(); ++i) {
    const double c = inst.derived[i].c_n;
    for (int t = 0; t < inst.horizon(); ++t) {
      const double ph = chi_hat.p[chi_hat.at(i, t)];
      const double dp = 2.0 * c * ph;
      const double du = c * ph * ph;
      sq += dp * dp + du * du;
    }
  }
  return std::sqrt(sq);
}

double objective_gradient_norm(const Instance& inst) {
  const int T = inst.horizon();
  double sq = 0.0;
  for (int i = 0; i < inst.n_units(); ++i) {
    const double ch = inst.units[i].c_hot;
    sq += T * (1.0 + ch * ch + 1.0);  // z, s, sc entries per period
  }
  sq += inst.cet.pi_b * inst.cet.pi_b + inst.cet.pi_s * inst.cet.pi_s;
  return std::sqrt(sq);
}

LinearConstraint inflated_nl_cut(const Instance& inst, const VariableLayout& layout,
                                 const DecisionVector& chi_hat, double mu,
                                 int r_index, const std::string& tag) {
  if (!(mu > 0.0 && mu <= 1.0)) throw std::invalid_argument("mu must be in (0,1]");
  LinearConstraint row = perspective_cut(inst, layout, chi_hat,
                                         tag.empty() ? "emission-ball" : tag);
  const double norm = perspective_gradient_norm(inst, chi_hat);
  if (norm > 0.0) row.add(r_index, mu * norm);
  return row;
}

std::optional<LinearConstraint> objective_cut(const Instance& inst,
                                              const VariableLayout& layout,
                                              const IncumbentSet& incumbents,
                                              double mu, int r_index) {
  if (incumbents.empty()) return std::nullopt;
  if (!(mu > 0.0 && mu <= 1.0)) throw std::invalid_argument("mu must be in (0,1]");
  LinearConstraint row;
  row.sense = Sense::LE;
  row.tag = "incumbent-ball";
  for (int i = 0; i < inst.n_units(); ++i) {
    const double ch = inst.units[i].c_hot;
    for (int t = 0; t < inst.horizon(); ++t) {
      row.add(layout.z(i, t), 1.0);
      if (ch != 0.0) row.add(layout.s(i, t), ch);
      row.add(layout.sc(i, t), 1.0);
    }
  }
  if (inst.cet.pi_b != 0.0) row.add(layout.de_b(), inst.cet.pi_b);
  if (inst.cet.pi_s != 0.0) row.add(layout.de_s(), -inst.cet.pi_s);
  row.add(r_index, objective_gradient_norm(inst) / mu);
  row.rhs = incumbents.best_objective();
  return row;
}

std::vector<LinearConstraint> build_piecewise_emission(const Instance& inst,
                                                       const VariableLayout& layout,
                                                       int breakpoints,
                                                       bool perspective) {
  if (breakpoints < 2) throw std::invalid_argument("need at least 2 breakpoints");
  std::vector<LinearConstraint> rows;
  rows.reserve(breakpoints);
  for (int k = 0; k < breakpoints; ++k) {
    DecisionVector point(inst.n_units(), inst.horizon());
    const double x = static_cast<double>(k) / (breakpoints - 1);
    for (double& v : point.p) v = x;
    const std::string tag = (perspective ? "emission-pw-psp k=" : "emission-pw k=") +
                            std::to_string(k);
    rows.push_back(perspective ? perspective_cut(inst, layout, point, tag)
                               : tangent_cut(inst, layout, point, tag));
  }
  return rows;
}

}  // namespace uccet
