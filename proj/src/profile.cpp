#include "uccet/profile.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace uccet {

void ProfileInput::validate() const {
  if (methods.size() < 2) throw std::invalid_argument("profile needs at least 2 methods");
  if (metric.size() != problems.size())
    throw std::invalid_argument("metric rows must match problems");
  for (const auto& row : metric) {
    if (row.size() != methods.size())
      throw std::invalid_argument("metric columns must match methods");
    for (double v : row)
      if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument("profile metric values must be finite and positive");
  }
}

double ProfileCurve::rho(double tau) const {
  double value = 0.0;
  for (const auto& [t, r] : steps) {
    if (t > tau) break;
    value = r;
  }
  return value;
}

std::vector<ProfileCurve> performance_profile(const ProfileInput& input) {
  input.validate();
  const size_t P = input.problems.size();
  const size_t S = input.methods.size();

  std::vector<std::vector<double>> ratio(P, std::vector<double>(S));
  for (size_t p = 0; p < P; ++p) {
    const double best = *std::min_element(input.metric[p].begin(), input.metric[p].end());
    for (size_t s = 0; s < S; ++s) ratio[p][s] = input.metric[p][s] / best;
  }

  std::vector<ProfileCurve> curves(S);
  for (size_t s = 0; s < S; ++s) {
    curves[s].method = input.methods[s];
    std::vector<double> r;
    r.reserve(P);
    for (size_t p = 0; p < P; ++p) r.push_back(ratio[p][s]);
    std::sort(r.begin(), r.end());
    // Collapse ties into single breakpoints; rho after each tau.
    size_t k = 0;
    while (k < P) {
      size_t j = k;
      while (j < P && r[j] <= r[k] + 1e-15) ++j;
      curves[s].steps.emplace_back(r[k], static_cast<double>(j) / P);
      k = j;
    }
    if (curves[s].steps.empty() || curves[s].steps.front().first > 1.0)
      curves[s].steps.insert(curves[s].steps.begin(), {1.0, 0.0});
  }
  return curves;
}

std::string profile_csv(const std::vector<ProfileCurve>& curves) {
  std::set<double> taus;
  for (const auto& c : curves)
    for (const auto& [t, r] : c.steps) taus.insert(t);
  std::ostringstream os;
  os << "tau";
  for (const auto& c : curves) os << "," << c.method;
  os << "\n";
  for (double tau : taus) {
    os << tau;
    for (const auto& c : curves) os << "," << c.rho(tau);
    os << "\n";
  }
  return os.str();
}

}  // namespace uccet
