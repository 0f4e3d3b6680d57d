#pragma once

#include <optional>
#include <vector>

#include "uccet/decision.hpp"
#include "uccet/instance.hpp"

namespace uccet {

/// Brute-force reference optimum for tiny instances. All computations go
/// through a private dense-LP path, independent of the external solver
/// backend, so results can certify the main algorithm.
struct OracleResult {
  bool feasible = false;
  double optimum = 0.0;
  DecisionVector argmin;
  /// Commitment combinations examined (product of per-unit feasible
  /// sequences, before dispatch).
  long long enumerated = 0;
  /// Commitment combinations with at least one feasible dispatch.
  long long feasible_patterns = 0;
};

struct DispatchResult {
  bool feasible = false;
  double objective = 0.0;
  DecisionVector point;
  int refinements = 0;
};

/// Continuous dispatch with every commitment/trading variable fixed: an LP
/// over output, cost-epigraph, and trading variables, with supporting
/// hyperplanes of the quadratic emission term refined at each LP optimum
/// until the objective settles within tol (relative) and the quadratic
/// residual is driven to ~1e-9 absolute. When s is omitted it is derived as
/// the minimal startup pattern max(0, u_t - u_{t-1}).
DispatchResult dispatch_refined(const Instance& inst, const std::vector<int>& u,
                                int u_b, int u_s, double tol = 1e-7,
                                const std::vector<int>* s = nullptr);

/// Enumerates every commitment pattern consistent with the minimum up/down,
/// initial-status, and state constraints (startup variables derived
/// minimally), dispatches each, and returns the global optimum. Requires
/// n_units*horizon + 2 <= 26 binary bits.
OracleResult enumerate_optimal(const Instance& inst, double dispatch_tol = 1e-7);

/// Whether one unit's on/off sequence passes its time-coupling constraints
/// (exposed for pruning-soundness checks).
bool unit_sequence_feasible(const Instance& inst, int unit, const std::vector<int>& u_seq);

/// All feasible on/off sequences of one unit, as bitmasks over periods
/// (bit t set means on in period t).
std::vector<unsigned> feasible_unit_sequences(const Instance& inst, int unit);

}  // namespace uccet
