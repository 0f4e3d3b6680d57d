#pragma once

#include <string>
#include <vector>

namespace uccet {

/// A full decision point. Blocks follow the canonical variable order used
/// throughout the library and in problem files:
///   u, s, u_b, u_s, p, z, sc, de_b, de_s, eta_cet.
/// Per-unit-period blocks are stored row-major: index(i,t) = i*T + t.
///
/// p is normalized output in [0, u]; z is the production-cost epigraph
/// variable ($); sc is the incremental cold-startup cost ($); eta_cet is the
/// auxiliary bounding the quadratic emission term (tCO2).
struct DecisionVector {
  int n_units = 0;
  int horizon = 0;

  std::vector<double> u;
  std::vector<double> s;
  double u_b = 0.0;
  double u_s = 0.0;
  std::vector<double> p;
  std::vector<double> z;
  std::vector<double> sc;
  double de_b = 0.0;
  double de_s = 0.0;
  double eta_cet = 0.0;

  DecisionVector() = default;
  DecisionVector(int n, int t)
      : n_units(n),
        horizon(t),
        u(static_cast<size_t>(n) * t, 0.0),
        s(static_cast<size_t>(n) * t, 0.0),
        p(static_cast<size_t>(n) * t, 0.0),
        z(static_cast<size_t>(n) * t, 0.0),
        sc(static_cast<size_t>(n) * t, 0.0) {}

  int at(int i, int t) const { return i * horizon + t; }
  int size() const { return 5 * n_units * horizon + 5; }

  bool shape_matches(int n, int t) const { return n_units == n && horizon == t; }

  /// True when all commitment/trading variables are within tol of {0,1}.
  bool binary_feasible(double tol = 1e-6) const;

  /// Snaps near-integral binary blocks to exact {0,1} values.
  void round_binaries();

  std::vector<double> flatten() const;
  static DecisionVector from_flat(int n, int t, const std::vector<double>& x);
};

/// Convex combination lambda*a + (1-lambda)*b over every block.
DecisionVector lerp(const DecisionVector& a, const DecisionVector& b, double lambda);

}  // namespace uccet
