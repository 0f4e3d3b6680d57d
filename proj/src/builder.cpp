#include "uccet/builder.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace uccet {

namespace {

std::string idx_tag(const char* base, int i, int t) {
  std::ostringstream os;
  os << base << " i=" << i << " t=" << t;
  return os.str();
}

}  // namespace

ModelProblem build_linear_base(const Instance& inst, std::vector<std::string>* warnings) {
  const int N = inst.n_units();
  const int T = inst.horizon();
  const int L = inst.cost_segments;
  const VariableLayout layout(N, T);

  ModelProblem m;
  m.name = "uc_cet";
  m.vars.resize(layout.count());
  for (int i = 0; i < N; ++i) {
    const UnitParams& unit = inst.units[i];
    const DerivedUnit& d = inst.derived[i];
    const int fixed_until = std::min(T, d.up_window + d.down_window);  // periods 1..fixed_until
    for (int t = 0; t < T; ++t) {
      const bool fixed = (t + 1) <= fixed_until;
      const double u0 = static_cast<double>(unit.u0);
      m.vars[layout.u(i, t)] = {layout.name(layout.u(i, t)), fixed ? u0 : 0.0,
                                fixed ? u0 : 1.0, true};
      m.vars[layout.s(i, t)] = {layout.name(layout.s(i, t)), 0.0, 1.0, true};
      m.vars[layout.p(i, t)] = {layout.name(layout.p(i, t)), 0.0, 1.0, false};
      m.vars[layout.z(i, t)] = {layout.name(layout.z(i, t)), 0.0, kInf, false};
      m.vars[layout.sc(i, t)] = {layout.name(layout.sc(i, t)), 0.0, kInf, false};
    }
  }
  m.vars[layout.u_b()] = {"u_b", 0.0, 1.0, true};
  m.vars[layout.u_s()] = {"u_s", 0.0, 1.0, true};
  m.vars[layout.de_b()] = {"de_b", 0.0, inst.cet.de_b_max, false};
  m.vars[layout.de_s()] = {"de_s", 0.0, inst.cet.de_s_max, false};
  m.vars[layout.eta()] = {"eta_cet", 0.0, kInf, false};

  for (int i = 0; i < N; ++i) {
    const UnitParams& unit = inst.units[i];
    const DerivedUnit& d = inst.derived[i];
    for (int t = 0; t < T; ++t) {
      // Production-cost epigraph: one cut per segment breakpoint.
      for (int l = 0; l <= L; ++l) {
        const double x0 = static_cast<double>(l) / L;
        LinearConstraint row;
        row.sense = Sense::LE;
        row.rhs = 0.0;
        row.tag = idx_tag("cost-cut", i, t) + " l=" + std::to_string(l);
        row.add(layout.p(i, t), 2.0 * d.gamma_n * x0 + d.beta_n);
        row.add(layout.u(i, t), d.alpha_n - d.gamma_n * x0 * x0);
        row.add(layout.z(i, t), -1.0);
        m.rows.push_back(std::move(row));
      }

      {
        LinearConstraint row;
        row.sense = Sense::GE;
        row.rhs = 0.0;
        row.tag = idx_tag("startup-floor", i, t);
        row.add(layout.sc(i, t), 1.0);
        m.rows.push_back(std::move(row));
      }
      {
        const double incr = unit.c_cold - unit.c_hot;
        LinearConstraint row;
        row.sense = Sense::LE;
        row.tag = idx_tag("startup-cold", i, t);
        row.add(layout.s(i, t), incr);
        const int lo = std::max(t + 1 - unit.t_off - unit.t_cold - 1, 1);
        for (int tau = lo; tau <= t; ++tau) row.add(layout.u(i, tau - 1), -incr);
        row.add(layout.sc(i, t), -1.0);
        row.rhs = incr * d.init_hot[t];
        m.rows.push_back(std::move(row));
      }

      {
        LinearConstraint row;
        row.sense = Sense::LE;
        row.rhs = 0.0;
        row.tag = idx_tag("gen-limit", i, t);
        row.add(layout.p(i, t), 1.0);
        row.add(layout.u(i, t), -1.0);
        m.rows.push_back(std::move(row));
      }

      if (t >= 1) {
        LinearConstraint up;
        up.sense = Sense::LE;
        up.rhs = 0.0;
        up.tag = idx_tag("ramp-up", i, t);
        up.add(layout.p(i, t), 1.0);
        up.add(layout.p(i, t - 1), -1.0);
        up.add(layout.u(i, t), -d.up_n);
        up.add(layout.s(i, t), -(d.start_n - d.up_n));
        m.rows.push_back(std::move(up));

        LinearConstraint down;
        down.sense = Sense::LE;
        down.rhs = 0.0;
        down.tag = idx_tag("ramp-down", i, t);
        down.add(layout.p(i, t - 1), 1.0);
        down.add(layout.p(i, t), -1.0);
        down.add(layout.u(i, t - 1), -d.shut_n);
        down.add(layout.s(i, t), -(d.shut_n - d.down_n));
        down.add(layout.u(i, t), d.shut_n - d.down_n);
        m.rows.push_back(std::move(down));
      }

      const int t1 = t + 1;
      if (t1 >= d.up_window + 1) {
        LinearConstraint row;
        row.sense = Sense::LE;
        row.rhs = 0.0;
        row.tag = idx_tag("min-up", i, t);
        for (int tau = std::max(1, t1 - unit.t_on + 1); tau <= t1; ++tau)
          row.add(layout.s(i, tau - 1), 1.0);
        row.add(layout.u(i, t), -1.0);
        m.rows.push_back(std::move(row));
      }
      if (t1 >= d.down_window + 1) {
        LinearConstraint row;
        row.sense = Sense::LE;
        row.rhs = 1.0;
        row.tag = idx_tag("min-down", i, t);
        for (int tau = std::max(1, t1 - unit.t_off + 1); tau <= t1; ++tau)
          row.add(layout.s(i, tau - 1), 1.0);
        const int ref = t1 - unit.t_off;
        if (ref >= 1)
          row.add(layout.u(i, ref - 1), 1.0);
        else
          row.rhs -= unit.u0;
        m.rows.push_back(std::move(row));
      }

      {
        LinearConstraint row;
        row.sense = Sense::LE;
        row.tag = idx_tag("state", i, t);
        row.add(layout.u(i, t), 1.0);
        row.add(layout.s(i, t), -1.0);
        if (t >= 1) {
          row.add(layout.u(i, t - 1), -1.0);
          row.rhs = 0.0;
        } else {
          row.rhs = static_cast<double>(unit.u0);
        }
        m.rows.push_back(std::move(row));
      }
    }
  }

  for (int t = 0; t < T; ++t) {
    LinearConstraint balance;
    balance.sense = Sense::EQ;
    balance.rhs = inst.system.demand[t];
    balance.tag = "power-balance t=" + std::to_string(t);
    for (int i = 0; i < N; ++i) {
      balance.add(layout.p(i, t), inst.range(i));
      balance.add(layout.u(i, t), inst.units[i].p_min);
    }
    m.rows.push_back(std::move(balance));

    LinearConstraint reserve;
    reserve.sense = Sense::GE;
    reserve.rhs = inst.system.demand[t] + inst.system.reserve[t];
    reserve.tag = "reserve t=" + std::to_string(t);
    for (int i = 0; i < N; ++i) reserve.add(layout.u(i, t), inst.units[i].p_max);
    m.rows.push_back(std::move(reserve));

    if (warnings) {
      double cap = 0.0;
      for (int i = 0; i < N; ++i) cap += inst.units[i].p_max;
      if (cap < inst.system.demand[t] + inst.system.reserve[t]) {
        std::ostringstream os;
        os << "period " << t << ": demand+reserve " << inst.system.demand[t] + inst.system.reserve[t]
           << " MW exceeds total capacity " << cap << " MW";
        warnings->push_back(os.str());
      }
    }
  }

  {
    LinearConstraint budget;
    budget.sense = Sense::LE;
    budget.rhs = inst.cet.e0;
    budget.tag = "emission-budget";
    for (int i = 0; i < N; ++i)
      for (int t = 0; t < T; ++t) {
        budget.add(layout.u(i, t), inst.derived[i].a_n);
        budget.add(layout.p(i, t), inst.derived[i].b_n);
      }
    budget.add(layout.eta(), 1.0);
    budget.add(layout.de_b(), -1.0);
    budget.add(layout.de_s(), 1.0);
    m.rows.push_back(std::move(budget));
  }
  {
    LinearConstraint buy;
    buy.sense = Sense::LE;
    buy.rhs = 0.0;
    buy.tag = "trade-buy";
    buy.add(layout.de_b(), 1.0);
    buy.add(layout.u_b(), -inst.cet.de_b_max);
    m.rows.push_back(std::move(buy));

    LinearConstraint sell;
    sell.sense = Sense::LE;
    sell.rhs = 0.0;
    sell.tag = "trade-sell";
    sell.add(layout.de_s(), 1.0);
    sell.add(layout.u_s(), -inst.cet.de_s_max);
    m.rows.push_back(std::move(sell));

    LinearConstraint excl;
    excl.sense = Sense::LE;
    excl.rhs = 1.0;
    excl.tag = "trade-exclusive";
    excl.add(layout.u_b(), 1.0);
    excl.add(layout.u_s(), 1.0);
    m.rows.push_back(std::move(excl));
  }

  m.check_consistent();
  return m;
}

void set_cost_objective(const Instance& inst, const VariableLayout& layout,
                        ModelProblem& problem) {
  problem.objective.clear();
  problem.maximize = false;
  for (int i = 0; i < inst.n_units(); ++i)
    for (int t = 0; t < inst.horizon(); ++t) {
      problem.objective.emplace_back(layout.z(i, t), 1.0);
      if (inst.units[i].c_hot != 0.0)
        problem.objective.emplace_back(layout.s(i, t), inst.units[i].c_hot);
      problem.objective.emplace_back(layout.sc(i, t), 1.0);
    }
  if (inst.cet.pi_b != 0.0) problem.objective.emplace_back(layout.de_b(), inst.cet.pi_b);
  if (inst.cet.pi_s != 0.0) problem.objective.emplace_back(layout.de_s(), -inst.cet.pi_s);
}

ModelProblem build_original_qcp(const Instance& inst, bool integrality) {
  const VariableLayout layout(inst.n_units(), inst.horizon());
  ModelProblem m = build_linear_base(inst);
  m.name = integrality ? "uc_cet_miqcp" : "uc_cet_qcp_relax";
  QuadConstraint q;
  q.tag = "emission-quad";
  q.rhs = 0.0;
  for (int i = 0; i < inst.n_units(); ++i) {
    const double c = inst.derived[i].c_n;
    if (c == 0.0) continue;
    for (int t = 0; t < inst.horizon(); ++t) q.quad.emplace_back(layout.p(i, t), c);
  }
  q.linear.emplace_back(layout.eta(), -1.0);
  m.quad_rows.push_back(std::move(q));
  if (!integrality)
    for (auto& v : m.vars) v.integral = false;
  set_cost_objective(inst, layout, m);
  m.check_consistent();
  return m;
}

ModelProblem build_piecewise_model(const Instance& inst, int breakpoints,
                                   bool perspective) {
  const VariableLayout layout(inst.n_units(), inst.horizon());
  ModelProblem m = build_linear_base(inst);
  m.name = perspective ? "uc_cet_pc_pw" : "uc_cet_s_pw";
  for (auto& row : build_piecewise_emission(inst, layout, breakpoints, perspective))
    m.rows.push_back(std::move(row));
  set_cost_objective(inst, layout, m);
  m.check_consistent();
  return m;
}

int expected_base_row_count(const Instance& inst) {
  const int N = inst.n_units();
  const int T = inst.horizon();
  const int L = inst.cost_segments;
  int count = N * T * (L + 1);  // cost cuts
  count += 2 * N * T;           // startup floor + cold
  count += N * T;               // generation limits
  count += 2 * N * (T - 1);     // ramps
  for (int i = 0; i < N; ++i) {
    count += std::max(0, T - inst.derived[i].up_window);    // min-up
    count += std::max(0, T - inst.derived[i].down_window);  // min-down
  }
  count += N * T;  // state
  count += 2 * T;  // balance + reserve
  count += 4;      // emission budget, trade caps, exclusivity
  return count;
}

}  // namespace uccet
