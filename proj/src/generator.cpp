#include "uccet/generator.hpp"

#include <random>
#include <stdexcept>

namespace uccet {

void GeneratorSpec::validate(size_t n_base_types) const {
  if (counts.size() != n_base_types)
    throw ValidationError("generator counts length " + std::to_string(counts.size()) +
                          " does not match base unit types " + std::to_string(n_base_types));
  int total = 0;
  for (int c : counts) {
    if (c < 0) throw ValidationError("generator counts must be nonnegative");
    total += c;
  }
  if (total == 0) throw ValidationError("generator counts produce an empty fleet");
  if (demand_profile.empty()) throw ValidationError("demand profile is empty");
  for (double f : demand_profile)
    if (!(f > 0.0 && f < 1.0))
      throw ValidationError("demand profile fractions must lie in (0,1)");
  if (reserve_fraction < 0.0) throw ValidationError("reserve fraction must be >= 0");
}

Instance generate_instance(const GeneratorSpec& spec,
                           const std::vector<UnitParams>& base_units) {
  spec.validate(base_units.size());

  std::vector<UnitParams> fleet;
  for (size_t type = 0; type < base_units.size(); ++type)
    for (int k = 0; k < spec.counts[type]; ++k) fleet.push_back(base_units[type]);

  if (spec.seed) {
    std::mt19937 rng(*spec.seed);
    std::uniform_real_distribution<double> jitter(-spec.perturbation, spec.perturbation);
    for (auto& u : fleet) {
      u.alpha *= 1.0 + jitter(rng);
      u.beta *= 1.0 + jitter(rng);
      u.gamma *= 1.0 + jitter(rng);
      u.a_e *= 1.0 + jitter(rng);
      u.b_e *= 1.0 + jitter(rng);
      u.c_e *= 1.0 + jitter(rng);
    }
  }

  double capacity = 0.0;
  for (const auto& u : fleet) capacity += u.p_max;

  SystemParams system;
  system.horizon = static_cast<int>(spec.demand_profile.size());
  system.demand.reserve(system.horizon);
  system.reserve.reserve(system.horizon);
  for (double f : spec.demand_profile) {
    system.demand.push_back(f * capacity);
    system.reserve.push_back(spec.reserve_fraction * f * capacity);
  }

  CETParams cet;
  cet.pi_b = spec.pi_b;
  cet.pi_s = spec.pi_s;
  cet.e0 = spec.e0_per_mwday * capacity;
  cet.de_b_max = spec.quota_fraction * cet.e0;
  cet.de_s_max = spec.quota_fraction * cet.e0;

  return derive_instance(std::move(fleet), std::move(system), cet, spec.cost_segments);
}

const std::vector<std::array<int, 8>>& replication_presets() {
  static const std::vector<std::array<int, 8>> presets = {
      {12, 11, 0, 0, 1, 4, 0, 0},          // 28 units
      {13, 15, 2, 0, 4, 0, 0, 1},          // 35
      {15, 11, 0, 1, 4, 5, 6, 3},          // 45
      {10, 10, 2, 5, 7, 5, 6, 5},          // 50
      {13, 12, 5, 7, 2, 5, 4, 6},          // 54
      {46, 45, 8, 0, 5, 0, 12, 16},        // 132
      {40, 54, 14, 8, 3, 15, 9, 13},       // 156
      {51, 58, 17, 19, 16, 1, 2, 1},       // 165
      {43, 46, 17, 15, 13, 15, 6, 12},     // 167
      {50, 59, 8, 15, 1, 18, 4, 17},       // 172
      {53, 50, 17, 15, 16, 5, 14, 12},     // 182
      {58, 50, 15, 7, 16, 18, 7, 12},      // 183
      {55, 48, 18, 5, 18, 17, 15, 11},     // 187
      {240, 220, 0, 0, 20, 80, 0, 0},      // 560
      {260, 300, 40, 0, 80, 0, 0, 20},     // 700
      {300, 260, 40, 120, 60, 20, 20, 60}, // 880
      {300, 220, 0, 20, 80, 100, 120, 60}, // 900
      {300, 260, 60, 140, 100, 60, 40, 20},  // 980
      {200, 200, 40, 100, 140, 100, 120, 100},  // 1000
      {340, 320, 20, 60, 20, 140, 40, 80},      // 1020
      {240, 340, 80, 140, 100, 40, 0, 100},     // 1040
      {260, 240, 100, 140, 40, 100, 80, 120},   // 1080
  };
  return presets;
}

std::vector<double> default_demand_profile() {
  return {0.71, 0.65, 0.62, 0.60, 0.58, 0.58, 0.60, 0.64, 0.73, 0.80, 0.82, 0.83,
          0.82, 0.80, 0.79, 0.78, 0.80, 0.86, 0.90, 0.88, 0.85, 0.78, 0.74, 0.72};
}

}  // namespace uccet
