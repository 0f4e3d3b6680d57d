#pragma once

#include <optional>
#include <string>
#include <vector>

#include "uccet/instance.hpp"

namespace uccet {

/// Loads an instance from JSON. Layout:
///   {
///     "units": [ { alpha, beta, gamma, c_hot, c_cold, t_cold, p_min, p_max,
///                  p_up, p_down, p_start, p_shut, u0, t0, t_on, t_off,
///                  a_e, b_e, c_e }, ... ],
///     "system": { "horizon": T, "demand": [...], "reserve": [...] },
///     "cet": { pi_b, pi_s, e0, de_b_max, de_s_max },
///     "cost_segments": 4
///   }
/// The "units" entry may instead be a string naming a CSV unit table
/// (resolved relative to the JSON file) whose header row lists the same
/// field names. cost_segments may be overridden by the caller.
Instance load_instance(const std::string& path,
                       std::optional<int> cost_segments = std::nullopt);

void save_instance(const Instance& inst, const std::string& path);

/// Reads a CSV unit table: a header row of field names, one unit per row.
std::vector<UnitParams> load_units_csv(const std::string& path);

}  // namespace uccet
