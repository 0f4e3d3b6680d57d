#include "uccet/la.hpp"

#include <cmath>
#include <sstream>

#include "uccet/builder.hpp"

namespace uccet {

std::string LaResult::trace_csv() const {
  std::ostringstream os;
  os << "iteration,lp_value,g_lp,lambda,cuts\n";
  for (const auto& r : trace)
    os << r.iteration << "," << r.lp_value << "," << r.g_lp << "," << r.lambda << ","
       << r.cuts << "\n";
  return os.str();
}

DecisionVector center_point(const Instance& inst, SolverBackend& backend) {
  const VariableLayout layout(inst.n_units(), inst.horizon());
  ModelProblem m = build_linear_base(inst);
  m.name = "center_point";
  const int q = m.add_var("q_residual", -kInf, kInf, false);
  QuadConstraint epi;
  epi.tag = "residual-epigraph";
  for (int i = 0; i < inst.n_units(); ++i) {
    const double c = inst.derived[i].c_n;
    if (c == 0.0) continue;
    for (int t = 0; t < inst.horizon(); ++t) epi.quad.emplace_back(layout.p(i, t), c);
  }
  epi.linear.emplace_back(layout.eta(), -1.0);
  epi.linear.emplace_back(q, -1.0);
  epi.rhs = 0.0;
  m.quad_rows.push_back(std::move(epi));
  m.objective = {{q, 1.0}};

  SolveOptions opts = SolveOptions::qcp_default();
  opts.relax_integrality = true;
  const SolveResult res = backend.solve(m, opts);
  if (res.status == SolveStatus::infeasible)
    throw InstanceInfeasible("linear constraint system is infeasible: " + res.message);
  if (!res.has_solution())
    throw BackendError("center-point solve failed: " + std::string(to_string(res.status)) +
                       " " + res.message);
  DecisionVector chi = layout.unpack(res.primal);
  const double g = eval_g(inst, chi);
  if (!(g < 0.0)) {
    std::ostringstream os;
    os << "no interior point: min residual is " << g;
    throw NoInteriorPoint(os.str());
  }
  return chi;
}

std::pair<DecisionVector, double> line_search(const Instance& inst,
                                              const DecisionVector& interior,
                                              const DecisionVector& exterior,
                                              double boundary_tol) {
  if (boundary_tol <= 0.0) throw std::invalid_argument("boundary_tol must be positive");
  const double g_int = eval_g(inst, interior);
  const double g_ext = eval_g(inst, exterior);
  if (!(g_int < 0.0))
    throw std::invalid_argument("line_search: interior endpoint has g = " +
                                std::to_string(g_int) + " (needs g < 0)");
  if (!(g_ext > 0.0))
    throw std::invalid_argument("line_search: exterior endpoint has g = " +
                                std::to_string(g_ext) + " (needs g > 0)");

  // Residual along lambda*interior + (1-lambda)*exterior is a quadratic
  // A*l^2 + B*l + C with C = g(exterior) > 0 and A+B+C = g(interior) < 0.
  double quad_a = 0.0, quad_b = 0.0;
  for (int i = 0; i < inst.n_units(); ++i) {
    const double c = inst.derived[i].c_n;
    for (int t = 0; t < inst.horizon(); ++t) {
      const int k = interior.at(i, t);
      const double diff = interior.p[k] - exterior.p[k];
      quad_a += c * diff * diff;
      quad_b += 2.0 * c * exterior.p[k] * diff;
    }
  }
  quad_b -= interior.eta_cet - exterior.eta_cet;
  const double quad_c = g_ext;

  auto phi = [&](double l) { return (quad_a * l + quad_b) * l + quad_c; };
  double lambda = -1.0;
  if (std::abs(quad_a) >= 1e-14 * std::abs(quad_b)) {
    const double disc = quad_b * quad_b - 4.0 * quad_a * quad_c;
    if (disc >= 0.0) {
      // Smaller root, written to avoid cancellation (B < -A-C < 0 here).
      lambda = 2.0 * quad_c / (-quad_b + std::sqrt(disc));
    }
  } else if (quad_b < 0.0) {
    lambda = -quad_c / quad_b;
  }

  if (lambda > 0.0 && lambda <= 1.0) {
    // Newton polish against the exact residual.
    for (int it = 0; it < 3; ++it) {
      const double f = phi(lambda);
      if (std::abs(f) <= boundary_tol * 0.5) break;
      const double df = 2.0 * quad_a * lambda + quad_b;
      if (df == 0.0) break;
      const double next = lambda - f / df;
      if (!(next > 0.0 && next <= 1.0)) break;
      lambda = next;
    }
  }
  if (!(lambda > 0.0 && lambda <= 1.0) || std::abs(phi(lambda)) > boundary_tol) {
    // Defensive bisection on the exact residual.
    double lo = 0.0, hi = 1.0;  // g(lo-end) > 0 > g(hi-end)
    lambda = 0.5;
    for (int it = 0; it < 200; ++it) {
      lambda = 0.5 * (lo + hi);
      const double f = phi(lambda);
      if (std::abs(f) <= boundary_tol * 0.5) break;
      (f > 0.0 ? lo : hi) = lambda;
    }
  }
  DecisionVector chi_hat = lerp(interior, exterior, lambda);
  return {std::move(chi_hat), lambda};
}

LaResult run_la(const Instance& inst, SolverBackend& backend, const LaParams& params) {
  if (params.k_max_lp < 1) throw std::invalid_argument("k_max_lp must be >= 1");
  const VariableLayout layout(inst.n_units(), inst.horizon());

  LaResult out;
  out.chi_cp = center_point(inst, backend);
  out.g_cp = eval_g(inst, out.chi_cp);

  ModelProblem m = build_linear_base(inst);
  m.name = "la_relaxation";
  set_cost_objective(inst, layout, m);
  SolveOptions opts = SolveOptions::lp_default();
  opts.relax_integrality = true;

  for (int k = 1;; ++k) {
    const SolveResult res = backend.solve(m, opts);
    if (res.status == SolveStatus::infeasible)
      throw InstanceInfeasible("relaxation LP infeasible: " + res.message);
    if (!res.has_solution())
      throw BackendError("relaxation LP failed: " + std::string(to_string(res.status)) +
                         " " + res.message);
    ++out.iterations;
    out.chi_lp = layout.unpack(res.primal);
    out.relaxation_value = res.objective;
    const double g_lp = eval_g(inst, out.chi_lp);

    LaIterRecord rec;
    rec.iteration = k;
    rec.lp_value = res.objective;
    rec.g_lp = g_lp;
    rec.cuts = out.omega_r.size();
    if (g_lp <= params.eps_lp) {
      out.trace.push_back(rec);
      break;
    }
    auto [chi_hat, lambda] = line_search(inst, out.chi_cp, out.chi_lp, params.boundary_tol);
    rec.lambda = lambda;
    m.rows.push_back(perspective_cut(inst, layout, chi_hat,
                                     "psp-cut s=" + std::to_string(out.omega_r.size())));
    out.omega_r.add(std::move(chi_hat));
    rec.cuts = out.omega_r.size();
    out.trace.push_back(rec);
    if (k > params.k_max_lp) {
      out.hit_iteration_cap = true;
      break;
    }
  }
  return out;
}

}  // namespace uccet
