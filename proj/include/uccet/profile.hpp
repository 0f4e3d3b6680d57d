#pragma once

#include <string>
#include <vector>

namespace uccet {

/// Input for performance profiles: one positive metric value per
/// (problem, method), lower is better.
struct ProfileInput {
  std::vector<std::string> methods;
  std::vector<std::string> problems;
  std::vector<std::vector<double>> metric;  // metric[p][s]

  void validate() const;
};

/// Right-continuous step function rho(tau) = fraction of problems whose
/// metric ratio to the per-problem best is at most tau.
struct ProfileCurve {
  std::string method;
  std::vector<std::pair<double, double>> steps;  // (tau, rho) breakpoints

  double rho(double tau) const;
};

std::vector<ProfileCurve> performance_profile(const ProfileInput& input);

/// Breakpoints of all curves as CSV (tau, one rho column per method).
std::string profile_csv(const std::vector<ProfileCurve>& curves);

}  // namespace uccet
