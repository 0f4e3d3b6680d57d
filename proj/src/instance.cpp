#include "uccet/instance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace uccet {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ValidationError(what); }

void require(bool ok, const std::string& what) {
  if (!ok) fail(what);
}

std::string unit_field(int i, const char* field) {
  std::ostringstream os;
  os << "unit " << i << ": invalid " << field;
  return os.str();
}

}  // namespace

void UnitParams::validate(int unit_index) const {
  require(p_min >= 0.0 && p_max > p_min, unit_field(unit_index, "p_min/p_max (need p_max > p_min >= 0)"));
  require(gamma >= 0.0, unit_field(unit_index, "gamma (must be >= 0)"));
  require(c_e >= 0.0, unit_field(unit_index, "c_e (must be >= 0)"));
  require(t_on >= 1, unit_field(unit_index, "t_on (must be >= 1)"));
  require(t_off >= 1, unit_field(unit_index, "t_off (must be >= 1)"));
  require(c_hot >= 0.0 && c_cold >= c_hot, unit_field(unit_index, "c_cold/c_hot (need c_cold >= c_hot >= 0)"));
  require(t_cold >= 0, unit_field(unit_index, "t_cold (must be >= 0)"));
  require(u0 == 0 || u0 == 1, unit_field(unit_index, "u0 (must be 0 or 1)"));
  require((u0 == 1) == (t0 > 0), unit_field(unit_index, "t0 (sign must match u0: t0 > 0 iff u0 = 1)"));
  require(p_up >= 0.0 && p_down >= 0.0, unit_field(unit_index, "p_up/p_down (must be >= 0)"));
}

void SystemParams::validate() const {
  require(horizon >= 1, "system: invalid horizon (must be >= 1)");
  require(static_cast<int>(demand.size()) == horizon, "system: demand length must equal horizon");
  require(static_cast<int>(reserve.size()) == horizon, "system: reserve length must equal horizon");
  for (int t = 0; t < horizon; ++t) {
    require(demand[t] >= 0.0, "system: demand must be nonnegative (period " + std::to_string(t) + ")");
    require(reserve[t] >= 0.0, "system: reserve must be nonnegative (period " + std::to_string(t) + ")");
  }
}

void CETParams::validate() const {
  require(pi_s >= 0.0 && pi_b >= pi_s, "cet: prices must satisfy pi_b >= pi_s >= 0");
  require(e0 >= 0.0, "cet: e0 must be nonnegative");
  require(de_b_max >= 0.0 && de_s_max >= 0.0, "cet: quota caps must be nonnegative");
}

Instance derive_instance(std::vector<UnitParams> units, SystemParams system,
                         CETParams cet, int cost_segments) {
  require(!units.empty(), "instance has no units");
  require(cost_segments >= 1, "cost_segments must be >= 1");
  system.validate();
  cet.validate();
  for (int i = 0; i < static_cast<int>(units.size()); ++i) units[i].validate(i);

  Instance inst;
  inst.system = std::move(system);
  inst.cet = cet;
  inst.cost_segments = cost_segments;
  const int T = inst.system.horizon;

  inst.derived.reserve(units.size());
  for (int i = 0; i < static_cast<int>(units.size()); ++i) {
    const UnitParams& u = units[i];
    const double range = u.p_max - u.p_min;
    DerivedUnit d;
    d.alpha_n = u.alpha + u.beta * u.p_min + u.gamma * u.p_min * u.p_min;
    d.beta_n = range * (u.beta + 2.0 * u.gamma * u.p_min);
    d.gamma_n = u.gamma * range * range;
    d.a_n = u.a_e + u.b_e * u.p_min + u.c_e * u.p_min * u.p_min;
    d.b_n = range * (u.b_e + 2.0 * u.c_e * u.p_min);
    d.c_n = u.c_e * range * range;
    d.up_n = u.p_up / range;
    d.down_n = u.p_down / range;
    d.start_n = (u.p_start - u.p_min) / range;
    d.shut_n = (u.p_shut - u.p_min) / range;
    d.up_window = std::max(0, std::min(T, u.u0 * (u.t_on - u.t0)));
    d.down_window = std::max(0, std::min(T, (1 - u.u0) * (u.t_off + u.t0)));

    d.init_hot.assign(T, 0);
    for (int t = 1; t <= T; ++t) {
      const int lookback = t - u.t_off - u.t_cold - 1;
      const int off_before = std::max(0, -u.t0);
      if (lookback <= 0 && off_before < std::abs(lookback) + 1) d.init_hot[t - 1] = 1;
    }
    inst.derived.push_back(std::move(d));
  }
  inst.units = std::move(units);
  return inst;
}

}  // namespace uccet
