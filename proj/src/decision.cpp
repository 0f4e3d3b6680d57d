#include "uccet/decision.hpp"

#include <cmath>
#include <stdexcept>

namespace uccet {

namespace {

bool near_binary(double v, double tol) {
  return std::abs(v) <= tol || std::abs(v - 1.0) <= tol;
}

double snap(double v) { return v < 0.5 ? 0.0 : 1.0; }

}  // namespace

bool DecisionVector::binary_feasible(double tol) const {
  for (double v : u)
    if (!near_binary(v, tol)) return false;
  for (double v : s)
    if (!near_binary(v, tol)) return false;
  return near_binary(u_b, tol) && near_binary(u_s, tol);
}

void DecisionVector::round_binaries() {
  for (double& v : u) v = snap(v);
  for (double& v : s) v = snap(v);
  u_b = snap(u_b);
  u_s = snap(u_s);
}

std::vector<double> DecisionVector::flatten() const {
  std::vector<double> x;
  x.reserve(size());
  x.insert(x.end(), u.begin(), u.end());
  x.insert(x.end(), s.begin(), s.end());
  x.push_back(u_b);
  x.push_back(u_s);
  x.insert(x.end(), p.begin(), p.end());
  x.insert(x.end(), z.begin(), z.end());
  x.insert(x.end(), sc.begin(), sc.end());
  x.push_back(de_b);
  x.push_back(de_s);
  x.push_back(eta_cet);
  return x;
}

DecisionVector DecisionVector::from_flat(int n, int t, const std::vector<double>& x) {
  DecisionVector v(n, t);
  if (static_cast<int>(x.size()) != v.size())
    throw std::invalid_argument("from_flat: wrong vector length");
  const size_t nt = static_cast<size_t>(n) * t;
  size_t k = 0;
  for (size_t j = 0; j < nt; ++j) v.u[j] = x[k++];
  for (size_t j = 0; j < nt; ++j) v.s[j] = x[k++];
  v.u_b = x[k++];
  v.u_s = x[k++];
  for (size_t j = 0; j < nt; ++j) v.p[j] = x[k++];
  for (size_t j = 0; j < nt; ++j) v.z[j] = x[k++];
  for (size_t j = 0; j < nt; ++j) v.sc[j] = x[k++];
  v.de_b = x[k++];
  v.de_s = x[k++];
  v.eta_cet = x[k++];
  return v;
}

DecisionVector lerp(const DecisionVector& a, const DecisionVector& b, double lambda) {
  if (!a.shape_matches(b.n_units, b.horizon))
    throw std::invalid_argument("lerp: shape mismatch");
  DecisionVector out(a.n_units, a.horizon);
  const double mu = 1.0 - lambda;
  const size_t nt = a.u.size();
  for (size_t j = 0; j < nt; ++j) {
    out.u[j] = lambda * a.u[j] + mu * b.u[j];
    out.s[j] = lambda * a.s[j] + mu * b.s[j];
    out.p[j] = lambda * a.p[j] + mu * b.p[j];
    out.z[j] = lambda * a.z[j] + mu * b.z[j];
    out.sc[j] = lambda * a.sc[j] + mu * b.sc[j];
  }
  out.u_b = lambda * a.u_b + mu * b.u_b;
  out.u_s = lambda * a.u_s + mu * b.u_s;
  out.de_b = lambda * a.de_b + mu * b.de_b;
  out.de_s = lambda * a.de_s + mu * b.de_s;
  out.eta_cet = lambda * a.eta_cet + mu * b.eta_cet;
  return out;
}

}  // namespace uccet
