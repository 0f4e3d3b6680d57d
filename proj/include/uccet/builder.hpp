#pragma once

#include <string>
#include <vector>

#include "uccet/cuts.hpp"
#include "uccet/model.hpp"

namespace uccet {

/// Builds the full linear constraint system over the canonical variable
/// layout: cost-curve cuts, startup-cost rows, generation limits, power
/// balance, spinning reserve, ramp limits, minimum up/down times, initial
/// status fixings, state coupling, the linearized emission budget, trading
/// caps, and buy/sell exclusivity. Commitment and trading variables carry
/// integrality flags; relaxation is a solve-time option.
///
/// Structurally doomed data (a period where demand plus reserve exceeds
/// total capacity) produces a warning but the model is still emitted.
ModelProblem build_linear_base(const Instance& inst,
                               std::vector<std::string>* warnings = nullptr);

/// Installs the total-cost objective (minimize).
void set_cost_objective(const Instance& inst, const VariableLayout& layout,
                        ModelProblem& problem);

/// The exact problem: linear base plus the single convex quadratic emission
/// row. With integrality = false all integrality flags are cleared, giving
/// the continuous relaxation whose optimum is the reference relaxation
/// value.
ModelProblem build_original_qcp(const Instance& inst, bool integrality);

/// Linear base plus K piecewise emission cuts (tangent or perspective form)
/// and the cost objective.
ModelProblem build_piecewise_model(const Instance& inst, int breakpoints,
                                   bool perspective);

/// Expected number of linear rows emitted by build_linear_base, in closed
/// form; used to cross-check the builder.
int expected_base_row_count(const Instance& inst);

}  // namespace uccet
