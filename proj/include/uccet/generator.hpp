#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "uccet/instance.hpp"

namespace uccet {

/// Builds scaled instances by replicating a base set of unit types.
struct GeneratorSpec {
  std::vector<int> counts;  // replication count per base unit type
  /// Demand per period as a fraction of total fleet capacity; its length
  /// sets the horizon.
  std::vector<double> demand_profile;
  double reserve_fraction = 0.03;
  /// Allowance budget rule: e0 = e0_per_mwday * total capacity (MW); quota
  /// caps are quota_fraction * e0.
  double e0_per_mwday = 8.0;
  double quota_fraction = 0.2;
  double pi_b = 50.0;
  double pi_s = 20.0;
  int cost_segments = 4;
  /// When set, jitters unit cost/emission coefficients multiplicatively by
  /// up to +-perturbation; unset means exact duplication.
  std::optional<unsigned> seed;
  double perturbation = 0.02;

  void validate(size_t n_base_types) const;
};

Instance generate_instance(const GeneratorSpec& spec,
                           const std::vector<UnitParams>& base_units);

/// Standard replication counts for the eight-type base fleet (fleet sizes
/// 28 through 1080 units), indexed 1..22.
const std::vector<std::array<int, 8>>& replication_presets();

/// Typical 24-period demand shape as capacity fractions.
std::vector<double> default_demand_profile();

}  // namespace uccet
