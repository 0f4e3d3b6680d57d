#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "uccet/cp.hpp"

namespace uccet {

/// Continuous-relaxation optima of the four formulations plus cut counts.
/// Tightness is reported as the difference exact-relaxation minus the
/// approximate formulation's relaxation (smaller difference = tighter).
struct TightnessReport {
  std::optional<double> z_origin;
  std::optional<double> z_cp_la;
  std::optional<double> z_s_pw;
  std::optional<double> z_pc_pw;
  int cuts_cp_la = 0;
  int cuts_s_pw = 0;
  int cuts_pc_pw = 0;
  std::vector<std::string> errors;

  std::optional<double> diff(const std::optional<double>& z) const {
    if (z_origin && z) return *z_origin - *z;
    return std::nullopt;
  }
};

TightnessReport tightness_report(const Instance& inst, SolverBackend& backend,
                                 int piecewise_breakpoints = 5,
                                 const LaParams& la_params = {});

struct TargetCrossing {
  bool reached = false;
  double objective = 0.0;  // first objective meeting the target
  double time_s = 0.0;
  int iterations = 0;
};

struct BenchInstanceReport {
  std::string name;
  int n_units = 0;
  std::string mode;  // "cp" or "direct"
  TightnessReport tightness;
  std::optional<double> best_objective;
  std::string termination;
  TargetCrossing within_5pct;
  TargetCrossing within_1pct;
  double total_time_s = 0.0;
  std::string error;  // nonempty when this instance failed
};

struct BenchmarkReport {
  std::vector<BenchInstanceReport> instances;

  std::string to_csv() const;
  std::string to_json() const;
};

using BackendFactory = std::function<std::unique_ptr<SolverBackend>()>;

/// Runs the chosen method on every instance, stamping incumbents against the
/// exact-relaxation targets 1.05*Z and 1.01*Z. Instances run concurrently up
/// to `workers`, each on its own backend handle; per-instance failures are
/// isolated into the report. Mode "direct" hands the full problem to the
/// backend as one mixed-integer quadratic solve.
BenchmarkReport bench_run(const std::vector<std::pair<std::string, Instance>>& instances,
                          const BackendFactory& make_backend,
                          const LaParams& la_params, const CpParams& cp_params,
                          const std::string& mode = "cp", int workers = 1);

}  // namespace uccet
