#include "uccet/cp.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "uccet/builder.hpp"

namespace uccet {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void fix_binaries(const Instance& inst, const VariableLayout& layout,
                  const DecisionVector& chi, ModelProblem& m) {
  auto fix = [&m](int var, double value) {
    const double v = value < 0.5 ? 0.0 : 1.0;
    m.vars[var].lb = m.vars[var].ub = v;
  };
  for (int i = 0; i < inst.n_units(); ++i)
    for (int t = 0; t < inst.horizon(); ++t) {
      fix(layout.u(i, t), chi.u[chi.at(i, t)]);
      fix(layout.s(i, t), chi.s[chi.at(i, t)]);
    }
  fix(layout.u_b(), chi.u_b);
  fix(layout.u_s(), chi.u_s);
}

QuadConstraint residual_row(const Instance& inst, const VariableLayout& layout,
                            int extra_var, const char* tag) {
  QuadConstraint q;
  q.tag = tag;
  q.rhs = 0.0;
  for (int i = 0; i < inst.n_units(); ++i) {
    const double c = inst.derived[i].c_n;
    if (c == 0.0) continue;
    for (int t = 0; t < inst.horizon(); ++t) q.quad.emplace_back(layout.p(i, t), c);
  }
  q.linear.emplace_back(layout.eta(), -1.0);
  if (extra_var >= 0) q.linear.emplace_back(extra_var, -1.0);
  return q;
}

}  // namespace

double mu_schedule(int k) {
  if (k < 0) throw std::invalid_argument("mu_schedule: k must be nonnegative");
  return 1.0 / (1.0 + 1e3 * std::exp(-3.0 * k));
}

const char* to_string(CpTermination t) {
  switch (t) {
    case CpTermination::optimal_by_r: return "optimal-by-r";
    case CpTermination::iteration_limit: return "iteration-limit";
    case CpTermination::time_limit: return "time-limit";
  }
  return "unknown";
}

std::string CpResult::trace_csv() const {
  std::ostringstream os;
  os << "k,mu,r_hat,g_icp,h,action,incumbent_obj,cum_time_s\n";
  for (const auto& r : trace)
    os << r.k << "," << r.mu << "," << r.r_hat << "," << r.g_icp << "," << r.h << ","
       << r.action << "," << r.incumbent_obj << "," << r.cum_time_s << "\n";
  return os.str();
}

std::pair<DecisionVector, double> integer_ellipsoid_center(
    const Instance& inst, const CutSet& omega_r, const IncumbentSet& omega_f,
    double mu, double r_cap, SolverBackend& backend, double time_limit) {
  if (omega_r.empty())
    throw AlgorithmError("integer_ellipsoid_center requires a nonempty cut set");
  const VariableLayout layout(inst.n_units(), inst.horizon());
  ModelProblem m = build_linear_base(inst);
  m.name = "integer_center";
  const int r = m.add_var("r", 0.0, r_cap, false);
  for (int s = 0; s < omega_r.size(); ++s)
    m.rows.push_back(inflated_nl_cut(inst, layout, omega_r.points[s].point, mu, r,
                                     "ball-cut s=" + std::to_string(s)));
  if (auto row = objective_cut(inst, layout, omega_f, mu, r)) m.rows.push_back(*row);
  m.objective = {{r, 1.0}};
  m.maximize = true;

  SolveOptions opts = SolveOptions::milp_default();
  opts.time_limit = time_limit;
  const SolveResult res = backend.solve(m, opts);
  if (res.status == SolveStatus::infeasible)
    throw AlgorithmError(
        "center MILP infeasible; the r = 0 slice should always be feasible: " + res.message);
  if (!res.has_solution())
    throw BackendError("center MILP failed: " + std::string(to_string(res.status)) + " " +
                       res.message);
  DecisionVector chi = layout.unpack(res.primal);
  if (!chi.binary_feasible(1e-4))
    throw BackendError("center MILP returned fractional commitment variables");
  chi.round_binaries();
  double r_hat = 0.0;
  if (auto it = res.primal.find("r"); it != res.primal.end()) r_hat = it->second;
  return {std::move(chi), r_hat};
}

std::pair<double, DecisionVector> feasibility_adjustment(const Instance& inst,
                                                         const DecisionVector& chi,
                                                         SolverBackend& backend,
                                                         double time_limit) {
  if (!chi.binary_feasible(1e-4))
    throw std::invalid_argument("feasibility_adjustment requires binary commitments");
  const VariableLayout layout(inst.n_units(), inst.horizon());
  ModelProblem m = build_linear_base(inst);
  m.name = "feasibility_adjustment";
  fix_binaries(inst, layout, chi, m);
  const int h = m.add_var("h", 0.0, kInf, false);
  m.quad_rows.push_back(residual_row(inst, layout, h, "residual-slack"));
  m.objective = {{h, 1.0}};

  SolveOptions opts = SolveOptions::qcp_default();
  opts.relax_integrality = true;
  opts.time_limit = time_limit;
  const SolveResult res = backend.solve(m, opts);
  if (res.status == SolveStatus::infeasible)
    return {std::numeric_limits<double>::infinity(), DecisionVector{}};
  if (!res.has_solution())
    throw BackendError("feasibility adjustment failed: " +
                       std::string(to_string(res.status)) + " " + res.message);
  return {std::max(0.0, res.objective), layout.unpack(res.primal)};
}

std::optional<DecisionVector> fixed_integer_search(const Instance& inst,
                                                   const DecisionVector& chi,
                                                   SolverBackend& backend,
                                                   double time_limit) {
  if (!chi.binary_feasible(1e-4))
    throw std::invalid_argument("fixed_integer_search requires binary commitments");
  const VariableLayout layout(inst.n_units(), inst.horizon());
  ModelProblem m = build_linear_base(inst);
  m.name = "fixed_integer_search";
  fix_binaries(inst, layout, chi, m);
  m.quad_rows.push_back(residual_row(inst, layout, -1, "emission-quad"));
  set_cost_objective(inst, layout, m);

  SolveOptions opts = SolveOptions::qcp_default();
  opts.relax_integrality = true;
  opts.time_limit = time_limit;
  const SolveResult res = backend.solve(m, opts);
  if (res.status == SolveStatus::infeasible) return std::nullopt;
  if (!res.has_solution())
    throw BackendError("fixed-integer search failed: " +
                       std::string(to_string(res.status)) + " " + res.message);
  DecisionVector out = layout.unpack(res.primal);
  out.round_binaries();
  return out;
}

CpResult run_cp(const Instance& inst, SolverBackend& backend, const LaParams& la_params,
                const CpParams& cp_params) {
  if (cp_params.max_milp_iters < 1)
    throw std::invalid_argument("max_milp_iters must be >= 1");
  if (cp_params.mu_fixed && !(*cp_params.mu_fixed > 0.0 && *cp_params.mu_fixed <= 1.0))
    throw std::invalid_argument("mu_fixed must lie in (0,1]");
  const auto t0 = Clock::now();

  CpResult out;
  LaResult la = run_la(inst, backend, la_params);
  out.la_relaxation_value = la.relaxation_value;
  out.la_cuts = la.omega_r.size();
  out.omega_r = std::move(la.omega_r);
  if (out.omega_r.empty()) {
    // The relaxation optimum already satisfies the residual; seed the cut
    // set with its boundary projection (eta raised onto g = 0) so the center
    // problem is defined.
    DecisionVector seed = la.chi_lp;
    double quad = 0.0;
    for (int i = 0; i < inst.n_units(); ++i)
      for (int t = 0; t < inst.horizon(); ++t) {
        const double p = seed.p[seed.at(i, t)];
        quad += inst.derived[i].c_n * p * p;
      }
    seed.eta_cet = quad;
    out.omega_r.add(std::move(seed));
  }

  IncumbentSet& omega_f = out.omega_f;
  const double deadline = cp_params.time_limit;
  auto remaining = [&]() { return std::max(1.0, deadline - seconds_since(t0)); };

  out.termination = CpTermination::iteration_limit;
  for (int k = 0; k < cp_params.max_milp_iters; ++k) {
    if (seconds_since(t0) >= deadline) {
      out.termination = CpTermination::time_limit;
      break;
    }
    const double mu = cp_params.mu_fixed ? *cp_params.mu_fixed : mu_schedule(k);
    CpIterRecord rec;
    rec.k = k;
    rec.mu = mu;
    rec.h = kNaN;
    rec.incumbent_obj = omega_f.empty() ? kNaN : omega_f.best_objective();

    auto [chi_icp, r_hat] =
        integer_ellipsoid_center(inst, out.omega_r, omega_f, mu, cp_params.r_cap,
                                 backend, remaining());
    rec.r_hat = r_hat;
    const double g_icp = eval_g(inst, chi_icp);
    rec.g_icp = g_icp;

    bool run_search = false;
    if (g_icp < cp_params.eps_g) {
      if (r_hat < cp_params.eps_r) {
        rec.action = "stop";
        if (omega_f.empty()) {
          // The radius collapsed before any neighborhood search ran; turn the
          // certified center into an incumbent so the result is usable.
          if (auto chi_u = fixed_integer_search(inst, chi_icp, backend, remaining())) {
            omega_f.add(*chi_u, eval_objective(inst, *chi_u));
            rec.incumbent_obj = omega_f.best_objective();
          }
        }
        rec.cum_time_s = seconds_since(t0);
        out.trace.push_back(std::move(rec));
        out.termination = CpTermination::optimal_by_r;
        break;
      }
      rec.action = "feasible->search";
      run_search = true;
    } else {
      auto [h, chi_adj] = feasibility_adjustment(inst, chi_icp, backend, remaining());
      rec.h = h;
      if (h >= cp_params.eps_h) {
        rec.action = "adjust->linesearch";
        if (g_icp > 0.0) {
          auto ls = line_search(inst, la.chi_cp, chi_icp, la_params.boundary_tol);
          out.omega_r.add(std::move(ls.first));
        } else {
          out.notes.push_back("iteration " + std::to_string(k) +
                              ": residual nonpositive at center point; cut skipped");
        }
      } else {
        rec.action = "adjust->search";
        run_search = true;
      }
    }

    if (run_search) {
      auto chi_u = fixed_integer_search(inst, chi_icp, backend, remaining());
      if (chi_u) {
        const double obj = eval_objective(inst, *chi_u);
        const double g_u = eval_g(inst, *chi_u);
        omega_f.add(*chi_u, obj);
        rec.incumbent_obj = omega_f.best_objective();
        if (std::abs(g_u) <= cp_params.eps_g) out.omega_r.add(std::move(*chi_u), true);
      } else {
        out.notes.push_back("iteration " + std::to_string(k) +
                            ": fixed-integer dispatch infeasible (tolerance race between "
                            "adjustment and search)");
        if (g_icp > 0.0) {
          auto ls = line_search(inst, la.chi_cp, chi_icp, la_params.boundary_tol);
          out.omega_r.add(std::move(ls.first));
        }
      }
    }
    rec.cum_time_s = seconds_since(t0);
    out.trace.push_back(std::move(rec));
  }

  if (!omega_f.empty()) {
    out.best = omega_f.best_point();
    out.best_objective = omega_f.best_objective();
  }
  out.total_time_s = seconds_since(t0);
  return out;
}

}  // namespace uccet
