#include "uccet/backend.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

namespace uccet {

namespace fs = std::filesystem;

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::feasible: return "feasible";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::unbounded: return "unbounded";
    case SolveStatus::time_limit: return "time_limit";
    case SolveStatus::error: return "error";
  }
  return "error";
}

SolveStatus solve_status_from_string(const std::string& s) {
  if (s == "optimal") return SolveStatus::optimal;
  if (s == "feasible") return SolveStatus::feasible;
  if (s == "infeasible") return SolveStatus::infeasible;
  if (s == "unbounded") return SolveStatus::unbounded;
  if (s == "time_limit") return SolveStatus::time_limit;
  if (s == "error") return SolveStatus::error;
  throw BackendError("unknown solve status '" + s + "'");
}

std::vector<double> SolveResult::primal_vector(const ModelProblem& problem) const {
  std::vector<double> x(problem.vars.size(), 0.0);
  for (size_t j = 0; j < problem.vars.size(); ++j) {
    auto it = primal.find(problem.vars[j].name);
    if (it != primal.end()) x[j] = it->second;
  }
  return x;
}

void BackendCapabilities::validate() const {
  for (const auto& c : supports)
    if (c != "LP" && c != "QP" && c != "MILP" && c != "QCP" && c != "MIQCP")
      throw BackendError("unknown capability '" + c + "'");
  if (has("MIQCP") && !(has("QCP") && has("MILP")))
    throw BackendError("MIQCP capability requires QCP and MILP");
  if (has("MILP") && !has("LP")) throw BackendError("MILP capability requires LP");
}

std::string default_solver_command() {
  if (const char* env = std::getenv("UCCET_SOLVER_CMD"); env && *env) return env;
#ifdef UCCET_BUNDLED_SOLVER
  return std::string("python3 ") + UCCET_BUNDLED_SOLVER +
         " {input} {output} {timelimit} {gap}";
#else
  throw BackendError(
      "no solver configured: set UCCET_SOLVER_CMD to a command template with "
      "{input} {output} {timelimit} {gap} placeholders");
#endif
}

namespace {

std::string substitute(const std::string& tmpl, const std::string& key,
                       const std::string& value) {
  std::string out = tmpl;
  const std::string pat = "{" + key + "}";
  size_t pos = 0;
  while ((pos = out.find(pat, pos)) != std::string::npos) {
    out.replace(pos, pat.size(), value);
    pos += value.size();
  }
  return out;
}

std::string tail_of_file(const std::string& path, size_t max_bytes = 2000) {
  std::ifstream in(path);
  if (!in) return "";
  std::ostringstream os;
  os << in.rdbuf();
  std::string s = os.str();
  if (s.size() > max_bytes) s = "..." + s.substr(s.size() - max_bytes);
  return s;
}

}  // namespace

ProcessBackend::ProcessBackend(std::string cmd_template, BackendCapabilities caps)
    : cmd_(std::move(cmd_template)), caps_(std::move(caps)) {
  caps_.validate();
  if (cmd_.empty()) cmd_ = default_solver_command();
  auto base = fs::temp_directory_path() / "uccet";
  fs::create_directories(base);
  // Unique per-handle directory; handles never share temp files.
  static std::atomic<int> serial{0};
  auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
  dir_ = (base / ("run_" + std::to_string(::getpid()) + "_" +
                  std::to_string(stamp % 1000000) + "_" +
                  std::to_string(serial.fetch_add(1))))
             .string();
  fs::create_directories(dir_);
}

ProcessBackend::~ProcessBackend() {
  if (!preserve_files_) {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }
}

SolveResult ProcessBackend::solve(const ModelProblem& problem, const SolveOptions& opts) {
  opts.validate();
  const std::string cls = problem.problem_class();
  if (!caps_.has(cls))
    throw BackendError("backend does not support problem class " + cls);

  const ModelProblem* to_solve = &problem;
  ModelProblem relaxed;
  if (opts.relax_integrality && problem.has_integrality()) {
    relaxed = problem;
    for (auto& v : relaxed.vars) v.integral = false;
    to_solve = &relaxed;
  }

  const std::string stem = dir_ + "/p" + std::to_string(counter_++);
  const std::string in_path = stem + ".mps";
  const std::string out_path = stem + ".sol";
  const std::string log_path = stem + ".log";
  write_problem_file(*to_solve, in_path);

  std::string cmd = cmd_;
  cmd = substitute(cmd, "input", in_path);
  cmd = substitute(cmd, "output", out_path);
  cmd = substitute(cmd, "timelimit", std::to_string(opts.time_limit));
  cmd = substitute(cmd, "gap", std::to_string(opts.rel_gap));
  if (opts.verbosity > 0) std::fprintf(stderr, "[backend] %s\n", cmd.c_str());
  cmd += " > " + log_path + " 2>&1";

  const int rc = std::system(cmd.c_str());
  SolveResult res;
  if (rc != 0 || !fs::exists(out_path)) {
    preserve_files_ = true;
    res.status = SolveStatus::error;
    res.message = "solver process failed (exit " + std::to_string(rc) + "); files kept in " +
                  dir_ + "; log tail: " + tail_of_file(log_path);
    return res;
  }
  try {
    res = parse_solution_file(out_path);
  } catch (const BackendError& e) {
    preserve_files_ = true;
    res = SolveResult{};
    res.status = SolveStatus::error;
    res.message = std::string("unparsable solution: ") + e.what() + "; files kept in " + dir_;
    return res;
  }

  if (res.has_solution()) {
    // Complete sparse solutions, clamp round-off beyond bounds, and recompute
    // the objective from the primal so the reported value is consistent.
    std::vector<double> x(to_solve->vars.size(), 0.0);
    for (size_t j = 0; j < to_solve->vars.size(); ++j) {
      const Variable& v = to_solve->vars[j];
      auto it = res.primal.find(v.name);
      if (it == res.primal.end()) {
        res.warnings.push_back("variable " + v.name + " missing from solution; set to 0");
        res.primal[v.name] = 0.0;
      } else {
        x[j] = it->second;
      }
      const double clamped = std::clamp(x[j], v.lb, v.ub);
      if (clamped != x[j]) {
        x[j] = clamped;
        res.primal[v.name] = clamped;
      }
    }
    const double recomputed = to_solve->objective_value(x);
    const double scale = std::max({1.0, std::abs(recomputed), std::abs(res.objective)});
    if (std::abs(recomputed - res.objective) > 1e-6 * scale)
      res.warnings.push_back("reported objective " + std::to_string(res.objective) +
                             " differs from recomputed " + std::to_string(recomputed));
    res.objective = recomputed;
  }

  std::error_code ec;
  fs::remove(in_path, ec);
  fs::remove(out_path, ec);
  fs::remove(log_path, ec);
  return res;
}

}  // namespace uccet
