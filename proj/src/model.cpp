#include "uccet/model.hpp"

#include <stdexcept>

namespace uccet {

void ModelProblem::check_consistent() const {
  const int n = static_cast<int>(vars.size());
  auto check_index = [n](int j, const std::string& where) {
    if (j < 0 || j >= n)
      throw std::logic_error("model row '" + where + "' references unknown variable");
  };
  for (const auto& row : rows) {
    if (row.tag.empty()) throw std::logic_error("untagged linear row");
    for (const auto& [j, c] : row.coeffs) {
      check_index(j, row.tag);
      if (c == 0.0) throw std::logic_error("zero coefficient stored in row " + row.tag);
    }
  }
  for (const auto& q : quad_rows) {
    if (q.tag.empty()) throw std::logic_error("untagged quadratic row");
    for (const auto& [j, c] : q.quad) {
      check_index(j, q.tag);
      if (c < 0.0)
        throw std::logic_error("nonconvex quadratic coefficient in row " + q.tag);
    }
    for (const auto& [j, c] : q.linear) check_index(j, q.tag);
  }
  for (const auto& [j, c] : objective) check_index(j, "objective");
}

VariableLayout::VariableLayout(int n_units, int horizon) : n_(n_units), t_(horizon) {}

std::string VariableLayout::name(int k) const {
  const int nt = n_ * t_;
  auto pair_name = [this](const char* base, int offset) {
    const int i = offset / t_;
    const int t = offset % t_;
    return std::string(base) + "_" + std::to_string(i) + "_" + std::to_string(t);
  };
  if (k < nt) return pair_name("u", k);
  if (k < 2 * nt) return pair_name("s", k - nt);
  if (k == u_b()) return "u_b";
  if (k == u_s()) return "u_s";
  if (k < 3 * nt + 2) return pair_name("p", k - 2 * nt - 2);
  if (k < 4 * nt + 2) return pair_name("z", k - 3 * nt - 2);
  if (k < 5 * nt + 2) return pair_name("sc", k - 4 * nt - 2);
  if (k == de_b()) return "de_b";
  if (k == de_s()) return "de_s";
  if (k == eta()) return "eta_cet";
  throw std::out_of_range("variable index beyond layout");
}

DecisionVector VariableLayout::unpack(const std::vector<double>& x) const {
  DecisionVector chi(n_, t_);
  for (int i = 0; i < n_; ++i)
    for (int t = 0; t < t_; ++t) {
      const int k = chi.at(i, t);
      chi.u[k] = x[u(i, t)];
      chi.s[k] = x[s(i, t)];
      chi.p[k] = x[p(i, t)];
      chi.z[k] = x[z(i, t)];
      chi.sc[k] = x[sc(i, t)];
    }
  chi.u_b = x[u_b()];
  chi.u_s = x[u_s()];
  chi.de_b = x[de_b()];
  chi.de_s = x[de_s()];
  chi.eta_cet = x[eta()];
  return chi;
}

void VariableLayout::pack(const DecisionVector& chi, std::vector<double>& x) const {
  if (static_cast<int>(x.size()) < count()) x.resize(count(), 0.0);
  for (int i = 0; i < n_; ++i)
    for (int t = 0; t < t_; ++t) {
      const int k = chi.at(i, t);
      x[u(i, t)] = chi.u[k];
      x[s(i, t)] = chi.s[k];
      x[p(i, t)] = chi.p[k];
      x[z(i, t)] = chi.z[k];
      x[sc(i, t)] = chi.sc[k];
    }
  x[u_b()] = chi.u_b;
  x[u_s()] = chi.u_s;
  x[de_b()] = chi.de_b;
  x[de_s()] = chi.de_s;
  x[eta()] = chi.eta_cet;
}

DecisionVector VariableLayout::unpack(const std::map<std::string, double>& primal) const {
  std::vector<double> x(count(), 0.0);
  for (int k = 0; k < count(); ++k) {
    auto it = primal.find(name(k));
    if (it != primal.end()) x[k] = it->second;
  }
  return unpack(x);
}

}  // namespace uccet
