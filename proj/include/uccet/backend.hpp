#pragma once

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "uccet/model.hpp"

namespace uccet {

class BackendError : public std::runtime_error {
 public:
  explicit BackendError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SolveOptions {
  bool relax_integrality = false;
  double time_limit = 600.0;  // seconds
  double rel_gap = 1e-4;
  int verbosity = 0;

  /// Presets matching the intended solve quality per problem class:
  /// LP to 0.5%, continuous nonlinear to 0.1%, MILP subproblems to 0.1%.
  static SolveOptions lp_default() { return {false, 600.0, 0.005, 0}; }
  static SolveOptions qcp_default() { return {false, 600.0, 0.001, 0}; }
  static SolveOptions milp_default() { return {false, 600.0, 0.001, 0}; }

  void validate() const {
    if (!(time_limit > 0)) throw BackendError("time_limit must be positive");
    if (!(rel_gap >= 0 && rel_gap < 1)) throw BackendError("rel_gap must be in [0,1)");
  }
};

enum class SolveStatus { optimal, feasible, infeasible, unbounded, time_limit, error };

const char* to_string(SolveStatus s);
SolveStatus solve_status_from_string(const std::string& s);

struct SolveResult {
  SolveStatus status = SolveStatus::error;
  double objective = 0.0;
  std::map<std::string, double> primal;
  double solve_time = 0.0;
  std::string message;
  std::vector<std::string> warnings;

  bool has_solution() const {
    return status == SolveStatus::optimal || status == SolveStatus::feasible ||
           (status == SolveStatus::time_limit && !primal.empty());
  }
  /// Primal as a flat vector aligned with the problem's variables; missing
  /// names default to zero.
  std::vector<double> primal_vector(const ModelProblem& problem) const;
};

struct BackendCapabilities {
  std::set<std::string> supports;  // subset of {LP, QP, MILP, QCP, MIQCP}

  bool has(const std::string& cls) const { return supports.count(cls) > 0; }
  /// Enforces MIQCP => QCP and MILP; MILP => LP.
  void validate() const;
};

/// Interface for solving LP/QP/MILP/QCP/MIQCP subproblems.
class SolverBackend {
 public:
  virtual ~SolverBackend() = default;
  virtual BackendCapabilities capabilities() const = 0;
  virtual SolveResult solve(const ModelProblem& problem, const SolveOptions& opts) = 0;
};

// ---------------------------------------------------------------------------
// Problem/solution files.

/// Writes the problem as free-format MPS. Quadratic rows appear in ROWS with
/// their linear parts and additionally as QCMATRIX sections listing squared
/// terms (activity adds q*x^2 per diagonal entry). Row names are the
/// provenance tags, sanitized; all numbers use 17 significant digits.
void write_problem_file(const ModelProblem& problem, const std::string& path);

/// Reads back a file produced by write_problem_file.
ModelProblem read_problem_file(const std::string& path);

/// Parses a solver solution file:
///   status <optimal|feasible|infeasible|unbounded|time_limit|error>
///   objective <num>      (optional)
///   solve_time <num>     (optional)
///   var <name> <num>     (one per variable present)
/// Malformed content raises BackendError with line context.
SolveResult parse_solution_file(const std::string& path);

// ---------------------------------------------------------------------------
// Shipped adapter: drives an external solver process through problem files.

/// Command template for the external solver. Placeholders {input}, {output},
/// {timelimit}, {gap} are substituted per solve. Resolution order:
/// explicit argument, UCCET_SOLVER_CMD environment variable, bundled
/// reference solver script.
std::string default_solver_command();

class ProcessBackend : public SolverBackend {
 public:
  /// cmd_template empty means default_solver_command(). Temporary files live
  /// in a fresh directory, removed on destruction unless a solve failed.
  explicit ProcessBackend(std::string cmd_template = "",
                          BackendCapabilities caps = {
                              {"LP", "QP", "MILP", "QCP", "MIQCP"}});
  ~ProcessBackend() override;

  ProcessBackend(const ProcessBackend&) = delete;
  ProcessBackend& operator=(const ProcessBackend&) = delete;

  BackendCapabilities capabilities() const override { return caps_; }
  SolveResult solve(const ModelProblem& problem, const SolveOptions& opts) override;

  const std::string& work_dir() const { return dir_; }

 private:
  std::string cmd_;
  BackendCapabilities caps_;
  std::string dir_;
  int counter_ = 0;
  bool preserve_files_ = false;
};

}  // namespace uccet
