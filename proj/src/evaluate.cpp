#include "uccet/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace uccet {

namespace {

void check_shape(const Instance& inst, const DecisionVector& chi) {
  if (!chi.shape_matches(inst.n_units(), inst.horizon()))
    throw std::invalid_argument("decision vector shape does not match instance");
}

}  // namespace

double eval_objective(const Instance& inst, const DecisionVector& chi) {
  check_shape(inst, chi);
  double total = 0.0;
  for (int i = 0; i < inst.n_units(); ++i) {
    const double c_hot = inst.units[i].c_hot;
    for (int t = 0; t < inst.horizon(); ++t) {
      const int k = chi.at(i, t);
      total += chi.z[k] + c_hot * chi.s[k] + chi.sc[k];
    }
  }
  total += inst.cet.pi_b * chi.de_b - inst.cet.pi_s * chi.de_s;
  return total;
}

double eval_g(const Instance& inst, const DecisionVector& chi) {
  check_shape(inst, chi);
  double q = 0.0;
  for (int i = 0; i < inst.n_units(); ++i) {
    const double c = inst.derived[i].c_n;
    for (int t = 0; t < inst.horizon(); ++t) {
      const double p = chi.p[chi.at(i, t)];
      q += c * p * p;
    }
  }
  return q - chi.eta_cet;
}

GradG eval_grad_g(const Instance& inst, const DecisionVector& chi) {
  check_shape(inst, chi);
  GradG grad;
  grad.dp.resize(chi.p.size());
  for (int i = 0; i < inst.n_units(); ++i) {
    const double c = inst.derived[i].c_n;
    for (int t = 0; t < inst.horizon(); ++t) {
      const int k = chi.at(i, t);
      grad.dp[k] = 2.0 * c * chi.p[k];
    }
  }
  grad.deta = -1.0;
  return grad;
}

double eval_true_cost(const Instance& inst, const DecisionVector& chi) {
  check_shape(inst, chi);
  if (!chi.binary_feasible())
    throw std::invalid_argument("eval_true_cost requires a binary-feasible point");
  const int T = inst.horizon();
  double total = 0.0;
  for (int i = 0; i < inst.n_units(); ++i) {
    const UnitParams& unit = inst.units[i];
    const DerivedUnit& d = inst.derived[i];
    for (int t = 0; t < T; ++t) {
      const int k = chi.at(i, t);
      const double u = chi.u[k] < 0.5 ? 0.0 : 1.0;
      const double s = chi.s[k] < 0.5 ? 0.0 : 1.0;
      const double mw = inst.mw(i, u, chi.p[k]);
      total += u * unit.alpha + unit.beta * mw + unit.gamma * mw * mw;
      // Startup: hot cost for every start, cold increment when no on-period
      // falls inside the lookback window and the initial history is cold.
      double recent_on = d.init_hot[t];
      const int lo = std::max(t + 1 - unit.t_off - unit.t_cold - 1, 1);  // 1-based
      for (int tau = lo; tau <= t; ++tau) recent_on += chi.u[chi.at(i, tau - 1)];
      total += unit.c_hot * s +
               (unit.c_cold - unit.c_hot) * std::max(0.0, s - recent_on);
    }
  }
  total += inst.cet.pi_b * chi.de_b - inst.cet.pi_s * chi.de_s;
  return total;
}

std::vector<std::pair<std::string, double>> ViolationReport::violations() const {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& [name, v] : family_max)
    if (v > tol) out.emplace_back(name, v);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.second > b.second; });
  return out;
}

std::string ViolationReport::to_string() const {
  std::ostringstream os;
  const auto bad = violations();
  if (bad.empty()) {
    os << "feasible within tol " << tol;
    return os.str();
  }
  os << "violations (tol " << tol << "):";
  for (const auto& [name, v] : bad) os << " " << name << "=" << v;
  return os.str();
}

ViolationReport validate_solution(const Instance& inst, const DecisionVector& chi,
                                  double tol) {
  check_shape(inst, chi);
  const int N = inst.n_units();
  const int T = inst.horizon();
  ViolationReport rep;
  rep.tol = tol;
  auto bump = [&rep](const std::string& family, double v) {
    double& slot = rep.family_max[family];
    slot = std::max(slot, v);
  };
  for (const char* f :
       {"cost-epigraph", "startup-cost", "generation-limit", "power-balance",
        "reserve", "ramp-up", "ramp-down", "min-up", "min-down",
        "initial-status", "state", "emission-budget", "trade-buy",
        "trade-sell", "exclusivity", "variable-bounds"})
    rep.family_max[f] = 0.0;

  const int L = inst.cost_segments;
  double emission = 0.0;
  for (int i = 0; i < N; ++i) {
    const UnitParams& unit = inst.units[i];
    const DerivedUnit& d = inst.derived[i];
    for (int t = 0; t < T; ++t) {
      const int k = chi.at(i, t);
      const double u = chi.u[k];
      const double s = chi.s[k];
      const double p = chi.p[k];

      for (int l = 0; l <= L; ++l) {
        const double x0 = static_cast<double>(l) / L;
        const double slope = 2.0 * d.gamma_n * x0 + d.beta_n;
        const double offset = d.alpha_n - d.gamma_n * x0 * x0;
        bump("cost-epigraph", slope * p + offset * u - chi.z[k]);
      }

      double recent_on = d.init_hot[t];
      const int lo = std::max(t + 1 - unit.t_off - unit.t_cold - 1, 1);
      for (int tau = lo; tau <= t; ++tau) recent_on += chi.u[chi.at(i, tau - 1)];
      bump("startup-cost", -chi.sc[k]);
      bump("startup-cost", (unit.c_cold - unit.c_hot) * (s - recent_on) - chi.sc[k]);

      bump("generation-limit", -p);
      bump("generation-limit", p - u);
      bump("variable-bounds", std::max({-u, u - 1.0, -s, s - 1.0}));

      if (t >= 1) {
        const int km = chi.at(i, t - 1);
        bump("ramp-up", p - chi.p[km] - (u * d.up_n + s * (d.start_n - d.up_n)));
        bump("ramp-down", chi.p[km] - p -
                              (chi.u[km] * d.shut_n + (s - u) * (d.shut_n - d.down_n)));
      }

      // 1-based period index for the time-window constraint families.
      const int t1 = t + 1;
      if (t1 >= d.up_window + 1) {
        double sum_s = 0.0;
        for (int tau = std::max(1, t1 - unit.t_on + 1); tau <= t1; ++tau)
          sum_s += chi.s[chi.at(i, tau - 1)];
        bump("min-up", sum_s - u);
      }
      if (t1 >= d.down_window + 1) {
        double sum_s = 0.0;
        for (int tau = std::max(1, t1 - unit.t_off + 1); tau <= t1; ++tau)
          sum_s += chi.s[chi.at(i, tau - 1)];
        const int ref = t1 - unit.t_off;
        const double u_ref = ref >= 1 ? chi.u[chi.at(i, ref - 1)]
                                      : static_cast<double>(unit.u0);
        bump("min-down", sum_s - (1.0 - u_ref));
      }
      if (t1 <= d.up_window + d.down_window)
        bump("initial-status", std::abs(u - unit.u0));

      const double u_prev = t >= 1 ? chi.u[chi.at(i, t - 1)]
                                   : static_cast<double>(unit.u0);
      bump("state", u - u_prev - s);

      emission += d.a_n * u + d.b_n * p + d.c_n * p * p;
    }
  }

  for (int t = 0; t < T; ++t) {
    double output = 0.0, committed_cap = 0.0;
    for (int i = 0; i < N; ++i) {
      const int k = chi.at(i, t);
      output += chi.p[k] * inst.range(i) + chi.u[k] * inst.units[i].p_min;
      committed_cap += chi.u[k] * inst.units[i].p_max;
    }
    bump("power-balance", std::abs(output - inst.system.demand[t]));
    bump("reserve", inst.system.demand[t] + inst.system.reserve[t] - committed_cap);
  }

  bump("emission-budget", emission - (inst.cet.e0 + chi.de_b - chi.de_s));
  bump("trade-buy", -chi.de_b);
  bump("trade-buy", chi.de_b - chi.u_b * inst.cet.de_b_max);
  bump("trade-sell", -chi.de_s);
  bump("trade-sell", chi.de_s - chi.u_s * inst.cet.de_s_max);
  bump("exclusivity", chi.u_b + chi.u_s - 1.0);
  bump("variable-bounds", std::max({-chi.u_b, chi.u_b - 1.0, -chi.u_s, chi.u_s - 1.0}));
  return rep;
}

}  // namespace uccet
