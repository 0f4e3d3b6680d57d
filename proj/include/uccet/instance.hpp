#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace uccet {

/// Raised when instance data fails validation. Message names the offending
/// field and, where applicable, the unit index.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Thermal unit data. Power quantities in MW, costs in $, emissions in tCO2.
struct UnitParams {
  // Quadratic production cost: alpha + beta*P + gamma*P^2 ($/h).
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  // Startup costs: hot always paid, cold adds (c_cold - c_hot) after the
  // unit has been down longer than t_off + t_cold periods.
  double c_hot = 0.0;
  double c_cold = 0.0;
  int t_cold = 0;
  // Output limits and ramp limits (MW, MW/period).
  double p_min = 0.0;
  double p_max = 0.0;
  double p_up = 0.0;
  double p_down = 0.0;
  double p_start = 0.0;
  double p_shut = 0.0;
  // Initial state: u0 in {0,1}; t0 > 0 is on-duration, t0 < 0 off-duration.
  int u0 = 0;
  int t0 = 0;
  // Minimum up/down times (periods).
  int t_on = 1;
  int t_off = 1;
  // Quadratic emission curve: a_e + b_e*P + c_e*P^2 (tCO2/h).
  double a_e = 0.0;
  double b_e = 0.0;
  double c_e = 0.0;

  void validate(int unit_index) const;
};

struct SystemParams {
  int horizon = 0;              // T
  std::vector<double> demand;   // MW per period
  std::vector<double> reserve;  // MW per period

  void validate() const;
};

/// Carbon trading parameters: allowance prices, total allowance, quota caps.
struct CETParams {
  double pi_b = 0.0;      // buy price ($/tCO2)
  double pi_s = 0.0;      // sell price ($/tCO2)
  double e0 = 0.0;        // total allowance (tCO2)
  double de_b_max = 0.0;  // max quota bought (tCO2)
  double de_s_max = 0.0;  // max quota sold (tCO2)

  void validate() const;
};

/// Per-unit constants derived from the raw data. Output is normalized as
/// p_norm = (P - u*p_min) / (p_max - p_min), so p_norm ranges over [0, u].
struct DerivedUnit {
  // Normalized production cost curve: cost(x) = gamma_n x^2 + beta_n x +
  // alpha_n for x in [0,1] (valid while the unit is on).
  double alpha_n = 0.0;
  double beta_n = 0.0;
  double gamma_n = 0.0;
  // Normalized emission curve, same shape.
  double a_n = 0.0;
  double b_n = 0.0;
  double c_n = 0.0;
  // Ramp limits in normalized output units.
  double up_n = 0.0;
  double down_n = 0.0;
  double start_n = 0.0;
  double shut_n = 0.0;
  // Initial-condition windows: the unit must keep state u0 for the first
  // up_window + down_window periods (one of the two is always zero).
  int up_window = 0;    // U_i
  int down_window = 0;  // L_i
  // init_cold[t] == 1 when a startup in period t (0-based) still counts as
  // hot because of the pre-horizon on/off history.
  std::vector<int> init_hot;
};

/// Fully derived problem instance. Construct with derive_instance().
struct Instance {
  std::vector<UnitParams> units;
  SystemParams system;
  CETParams cet;
  std::vector<DerivedUnit> derived;
  int cost_segments = 4;  // number of cost-curve segments (cuts = segments+1)

  int n_units() const { return static_cast<int>(units.size()); }
  int horizon() const { return system.horizon; }
  double range(int i) const { return units[i].p_max - units[i].p_min; }
  /// De-normalize: MW output of unit i given (u, p_norm).
  double mw(int i, double u, double p_norm) const {
    return u * units[i].p_min + range(i) * p_norm;
  }
};

/// Validates raw data, computes all derived constants, and returns the
/// ready-to-use instance. cost_segments is the number of segments of the
/// piecewise production-cost underestimate (>= 1).
Instance derive_instance(std::vector<UnitParams> units, SystemParams system,
                         CETParams cet, int cost_segments = 4);

}  // namespace uccet
