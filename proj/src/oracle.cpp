#include "uccet/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "uccet/simplex.hpp"

namespace uccet {

namespace {

std::vector<int> minimal_startups(const Instance& inst, int unit,
                                  const std::vector<int>& u_seq) {
  const int T = inst.horizon();
  std::vector<int> s(T, 0);
  int prev = inst.units[unit].u0;
  for (int t = 0; t < T; ++t) {
    s[t] = std::max(0, u_seq[t] - prev);
    prev = u_seq[t];
  }
  return s;
}

}  // namespace

bool unit_sequence_feasible(const Instance& inst, int unit, const std::vector<int>& u_seq) {
  const UnitParams& up = inst.units[unit];
  const DerivedUnit& d = inst.derived[unit];
  const int T = inst.horizon();
  const std::vector<int> s = minimal_startups(inst, unit, u_seq);

  for (int t1 = 1; t1 <= std::min(T, d.up_window + d.down_window); ++t1)
    if (u_seq[t1 - 1] != up.u0) return false;
  for (int t1 = d.up_window + 1; t1 <= T; ++t1) {
    int sum = 0;
    for (int tau = std::max(1, t1 - up.t_on + 1); tau <= t1; ++tau) sum += s[tau - 1];
    if (sum > u_seq[t1 - 1]) return false;
  }
  for (int t1 = d.down_window + 1; t1 <= T; ++t1) {
    int sum = 0;
    for (int tau = std::max(1, t1 - up.t_off + 1); tau <= t1; ++tau) sum += s[tau - 1];
    const int ref = t1 - up.t_off;
    const int u_ref = ref >= 1 ? u_seq[ref - 1] : up.u0;
    if (sum > 1 - u_ref) return false;
  }
  return true;
}

std::vector<unsigned> feasible_unit_sequences(const Instance& inst, int unit) {
  const int T = inst.horizon();
  std::vector<unsigned> out;
  std::vector<int> seq(T);
  for (unsigned mask = 0; mask < (1u << T); ++mask) {
    for (int t = 0; t < T; ++t) seq[t] = (mask >> t) & 1u;
    if (unit_sequence_feasible(inst, unit, seq)) out.push_back(mask);
  }
  return out;
}

DispatchResult dispatch_refined(const Instance& inst, const std::vector<int>& u,
                                int u_b, int u_s, double tol,
                                const std::vector<int>* s_in) {
  const int N = inst.n_units();
  const int T = inst.horizon();
  if (static_cast<int>(u.size()) != N * T)
    throw std::invalid_argument("dispatch_refined: u has wrong length");
  if (u_b + u_s > 1) throw std::invalid_argument("dispatch_refined: u_b + u_s > 1");

  std::vector<int> s;
  if (s_in) {
    s = *s_in;
  } else {
    s.resize(N * T);
    for (int i = 0; i < N; ++i) {
      std::vector<int> useq(u.begin() + i * T, u.begin() + (i + 1) * T);
      const auto si = minimal_startups(inst, i, useq);
      std::copy(si.begin(), si.end(), s.begin() + i * T);
    }
  }

  // Startup costs are fully determined by the fixed pattern.
  double fixed_cost = 0.0;
  std::vector<double> sc_val(N * T, 0.0);
  for (int i = 0; i < N; ++i) {
    const UnitParams& up = inst.units[i];
    const DerivedUnit& d = inst.derived[i];
    for (int t = 0; t < T; ++t) {
      const int k = i * T + t;
      int recent_on = d.init_hot[t];
      for (int tau = std::max(t + 1 - up.t_off - up.t_cold - 1, 1); tau <= t; ++tau)
        recent_on += u[i * T + tau - 1];
      sc_val[k] = std::max(0.0, (up.c_cold - up.c_hot) * (s[k] - recent_on));
      fixed_cost += up.c_hot * s[k] + sc_val[k];
    }
  }

  // LP variables: p(i,t), z(i,t), de_b, de_s, eta.
  DenseLp lp;
  std::vector<int> vp(N * T), vz(N * T);
  for (int i = 0; i < N; ++i)
    for (int t = 0; t < T; ++t) {
      const int k = i * T + t;
      vp[k] = lp.add_var(0.0, static_cast<double>(u[k]), 0.0);
      vz[k] = lp.add_var(0.0, kInf, 1.0);
    }
  const int vdb = lp.add_var(0.0, u_b ? inst.cet.de_b_max : 0.0, inst.cet.pi_b);
  const int vds = lp.add_var(0.0, u_s ? inst.cet.de_s_max : 0.0, -inst.cet.pi_s);
  const int veta = lp.add_var(0.0, kInf, 0.0);

  const int L = inst.cost_segments;
  for (int i = 0; i < N; ++i) {
    const DerivedUnit& d = inst.derived[i];
    for (int t = 0; t < T; ++t) {
      const int k = i * T + t;
      for (int l = 0; l <= L; ++l) {
        const double x0 = static_cast<double>(l) / L;
        LpRow row;
        row.coeffs = {{vp[k], 2.0 * d.gamma_n * x0 + d.beta_n}, {vz[k], -1.0}};
        row.sense = Sense::LE;
        row.rhs = -(d.alpha_n - d.gamma_n * x0 * x0) * u[k];
        lp.rows.push_back(std::move(row));
      }
      if (t >= 1) {
        LpRow ru;
        ru.coeffs = {{vp[k], 1.0}, {vp[k - 1], -1.0}};
        ru.sense = Sense::LE;
        ru.rhs = d.up_n * u[k] + (d.start_n - d.up_n) * s[k];
        lp.rows.push_back(std::move(ru));
        LpRow rd;
        rd.coeffs = {{vp[k - 1], 1.0}, {vp[k], -1.0}};
        rd.sense = Sense::LE;
        rd.rhs = d.shut_n * u[k - 1] + (s[k] - u[k]) * (d.shut_n - d.down_n);
        lp.rows.push_back(std::move(rd));
      }
    }
  }
  for (int t = 0; t < T; ++t) {
    LpRow bal;
    bal.sense = Sense::EQ;
    double rhs = inst.system.demand[t];
    for (int i = 0; i < N; ++i) {
      bal.coeffs.emplace_back(vp[i * T + t], inst.range(i));
      rhs -= inst.units[i].p_min * u[i * T + t];
    }
    bal.rhs = rhs;
    lp.rows.push_back(std::move(bal));

    double committed_cap = 0.0;
    for (int i = 0; i < N; ++i) committed_cap += inst.units[i].p_max * u[i * T + t];
    if (committed_cap < inst.system.demand[t] + inst.system.reserve[t] - 1e-12)
      return {};  // reserve requirement cannot hold
  }
  {
    LpRow budget;
    budget.sense = Sense::LE;
    double rhs = inst.cet.e0;
    for (int i = 0; i < N; ++i)
      for (int t = 0; t < T; ++t) {
        const int k = i * T + t;
        budget.coeffs.emplace_back(vp[k], inst.derived[i].b_n);
        rhs -= inst.derived[i].a_n * u[k];
      }
    budget.coeffs.emplace_back(veta, 1.0);
    budget.coeffs.emplace_back(vdb, -1.0);
    budget.coeffs.emplace_back(vds, 1.0);
    budget.rhs = rhs;
    lp.rows.push_back(std::move(budget));
  }

  auto add_tangent = [&](const std::vector<double>& p_hat) {
    LpRow cut;
    cut.sense = Sense::LE;
    double rhs = 0.0;
    for (int i = 0; i < N; ++i) {
      const double c = inst.derived[i].c_n;
      for (int t = 0; t < T; ++t) {
        const int k = i * T + t;
        if (c != 0.0 && p_hat[k] != 0.0) cut.coeffs.emplace_back(vp[k], 2.0 * c * p_hat[k]);
        rhs += c * p_hat[k] * p_hat[k];
      }
    }
    cut.coeffs.emplace_back(veta, -1.0);
    cut.rhs = rhs;
    lp.rows.push_back(std::move(cut));
  };
  std::vector<double> seed(N * T, 0.5);
  add_tangent(seed);
  seed.assign(N * T, 1.0);
  add_tangent(seed);

  DispatchResult out;
  double prev_obj = kInf;
  LpSolution sol;
  for (int it = 0; it < 200; ++it) {
    sol = solve_dense_lp(lp);
    if (sol.status != LpStatus::optimal) return {};
    out.refinements = it + 1;
    double quad = 0.0;
    for (int k = 0; k < N * T; ++k) {
      const double c = inst.derived[k / T].c_n;
      quad += c * sol.x[vp[k]] * sol.x[vp[k]];
    }
    const double viol = quad - sol.x[veta];
    const bool obj_settled = std::abs(sol.objective - prev_obj) <=
                             tol * std::max(1.0, std::abs(sol.objective));
    prev_obj = sol.objective;
    if (viol <= 1e-9 && obj_settled) break;
    std::vector<double> p_now(N * T);
    for (int k = 0; k < N * T; ++k) p_now[k] = sol.x[vp[k]];
    add_tangent(p_now);
  }

  out.feasible = true;
  out.objective = sol.objective + fixed_cost;
  out.point = DecisionVector(N, T);
  for (int k = 0; k < N * T; ++k) {
    out.point.u[k] = u[k];
    out.point.s[k] = s[k];
    out.point.p[k] = sol.x[vp[k]];
    out.point.z[k] = sol.x[vz[k]];
    out.point.sc[k] = sc_val[k];
  }
  out.point.u_b = u_b;
  out.point.u_s = u_s;
  out.point.de_b = sol.x[vdb];
  out.point.de_s = sol.x[vds];
  out.point.eta_cet = sol.x[veta];
  return out;
}

OracleResult enumerate_optimal(const Instance& inst, double dispatch_tol) {
  const int N = inst.n_units();
  const int T = inst.horizon();
  if (N * T + 2 > 26)
    throw std::invalid_argument("oracle bit cap exceeded: n_units*horizon + 2 must be <= 26");

  std::vector<std::vector<unsigned>> per_unit(N);
  for (int i = 0; i < N; ++i) {
    per_unit[i] = feasible_unit_sequences(inst, i);
    if (per_unit[i].empty()) return {};
  }
  long long combos = 1;
  for (const auto& seqs : per_unit) combos *= static_cast<long long>(seqs.size());

  struct Best {
    double obj = kInf;
    long long index = -1;
    DecisionVector point;
    long long feasible = 0;
  };

  auto evaluate_range = [&](long long begin, long long end) {
    Best best;
    std::vector<int> u(N * T);
    for (long long idx = begin; idx < end; ++idx) {
      long long rest = idx;
      for (int i = 0; i < N; ++i) {
        const unsigned mask = per_unit[i][rest % per_unit[i].size()];
        rest /= per_unit[i].size();
        for (int t = 0; t < T; ++t) u[i * T + t] = (mask >> t) & 1u;
      }
      // Cheap per-period screens before dispatching.
      bool plausible = true;
      for (int t = 0; t < T && plausible; ++t) {
        double cap = 0.0, floor = 0.0;
        for (int i = 0; i < N; ++i) {
          cap += inst.units[i].p_max * u[i * T + t];
          floor += inst.units[i].p_min * u[i * T + t];
        }
        if (cap < inst.system.demand[t] + inst.system.reserve[t] - 1e-9 ||
            floor > inst.system.demand[t] + 1e-9)
          plausible = false;
      }
      if (!plausible) continue;

      bool any = false;
      // Buying and selling windows cover the no-trade case (quota may stay 0).
      for (const auto& [ub, us] : {std::pair{1, 0}, std::pair{0, 1}}) {
        DispatchResult d = dispatch_refined(inst, u, ub, us, dispatch_tol);
        if (!d.feasible) continue;
        any = true;
        if (d.objective < best.obj - 1e-12 ||
            (d.objective < best.obj + 1e-12 && idx < best.index)) {
          best.obj = d.objective;
          best.index = idx;
          best.point = std::move(d.point);
        }
      }
      if (any) ++best.feasible;
    }
    return best;
  };

  const int workers = std::max(1, std::min<int>(std::thread::hardware_concurrency(),
                                                static_cast<int>(std::min<long long>(combos, 8))));
  std::vector<Best> partial(workers);
  {
    std::vector<std::thread> threads;
    const long long chunk = (combos + workers - 1) / workers;
    for (int w = 0; w < workers; ++w)
      threads.emplace_back([&, w]() {
        partial[w] = evaluate_range(w * chunk, std::min(combos, (w + 1) * chunk));
      });
    for (auto& th : threads) th.join();
  }

  OracleResult res;
  res.enumerated = combos;
  Best best;
  for (const auto& b : partial) {
    res.feasible_patterns += b.feasible;
    if (b.index < 0) continue;
    if (b.obj < best.obj - 1e-12 ||
        (b.obj < best.obj + 1e-12 && (best.index < 0 || b.index < best.index))) {
      best.obj = b.obj;
      best.index = b.index;
      best.point = b.point;
    }
  }
  if (best.index < 0) return res;

  res.feasible = true;
  res.optimum = best.obj;
  res.argmin = std::move(best.point);
  // Clear trade indicators that carry no traded quota.
  if (res.argmin.de_b <= 1e-9) res.argmin.u_b = 0.0;
  if (res.argmin.de_s <= 1e-9) res.argmin.u_s = 0.0;
  return res;
}

}  // namespace uccet
