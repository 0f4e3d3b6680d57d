#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "uccet/bench.hpp"
#include "uccet/builder.hpp"
#include "uccet/generator.hpp"
#include "uccet/instance_io.hpp"
#include "uccet/oracle.hpp"
#include "uccet/profile.hpp"

namespace {

using nlohmann::json;
using namespace uccet;

struct CommonOpts {
  std::string instance_path;
  std::string solver_cmd;
  std::string out_format = "json";
  std::string output_path;
  int l_seg = 4;
  double eps_lp = 1e-3, eps_r = 1e-3, eps_g = 1e-3, eps_h = 1e-3;
  std::string mu = "schedule";
  double time_limit = 600.0;
  int max_iters = 100;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_instance = true) {
  if (needs_instance)
    cmd->add_option("--instance", o.instance_path, "instance JSON file")->required();
  cmd->add_option("--solver-cmd", o.solver_cmd,
                  "solver command template with {input} {output} {timelimit} {gap}");
  cmd->add_option("--out", o.out_format, "output format: json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--output", o.output_path, "write output to this file instead of stdout");
  cmd->add_option("--l-seg", o.l_seg, "production-cost segments")->check(CLI::PositiveNumber);
  cmd->add_option("--eps-lp", o.eps_lp, "LP-loop residual tolerance");
  cmd->add_option("--eps-r", o.eps_r, "radius stop tolerance");
  cmd->add_option("--eps-g", o.eps_g, "residual feasibility tolerance");
  cmd->add_option("--eps-h", o.eps_h, "adjustment feasibility tolerance");
  cmd->add_option("--mu", o.mu, "ellipsoid factor: 'schedule' or 'fixed:<v>'");
  cmd->add_option("--time-limit", o.time_limit, "seconds per run");
  cmd->add_option("--max-iters", o.max_iters, "max center iterations");
}

LaParams la_params_of(const CommonOpts& o) {
  LaParams p;
  p.eps_lp = o.eps_lp;
  return p;
}

CpParams cp_params_of(const CommonOpts& o) {
  CpParams p;
  p.eps_r = o.eps_r;
  p.eps_g = o.eps_g;
  p.eps_h = o.eps_h;
  p.max_milp_iters = o.max_iters;
  p.time_limit = o.time_limit;
  if (o.mu != "schedule") {
    if (o.mu.rfind("fixed:", 0) != 0)
      throw CLI::ValidationError("--mu", "expected 'schedule' or 'fixed:<value>'");
    p.mu_fixed = std::stod(o.mu.substr(6));
  }
  return p;
}

void emit(const CommonOpts& o, const std::string& text) {
  if (o.output_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
  } else {
    std::ofstream out(o.output_path);
    if (!out) throw std::runtime_error("cannot write " + o.output_path);
    out << text;
  }
}

json trace_json(const CpResult& cp) {
  json rows = json::array();
  for (const auto& r : cp.trace) {
    json e;
    e["k"] = r.k;
    e["mu"] = r.mu;
    e["r_hat"] = r.r_hat;
    e["g_icp"] = r.g_icp;
    if (!std::isnan(r.h)) e["h"] = r.h;
    e["action"] = r.action;
    if (!std::isnan(r.incumbent_obj)) e["incumbent_obj"] = r.incumbent_obj;
    e["cum_time_s"] = r.cum_time_s;
    rows.push_back(std::move(e));
  }
  return rows;
}

int cmd_solve(const CommonOpts& o) {
  const Instance inst = load_instance(o.instance_path, o.l_seg);
  ProcessBackend backend(o.solver_cmd);
  const CpResult cp = run_cp(inst, backend, la_params_of(o), cp_params_of(o));
  if (o.out_format == "csv") {
    emit(o, cp.trace_csv());
    return cp.best ? 0 : 2;
  }
  json j;
  j["termination"] = to_string(cp.termination);
  j["la"] = {{"relaxation_value", cp.la_relaxation_value}, {"cuts", cp.la_cuts}};
  j["iterations"] = cp.trace.size();
  j["total_time_s"] = cp.total_time_s;
  j["trace"] = trace_json(cp);
  if (!cp.notes.empty()) j["notes"] = cp.notes;
  if (cp.best) {
    j["best_objective"] = cp.best_objective;
    j["true_cost"] = eval_true_cost(inst, *cp.best);
    const ViolationReport rep = validate_solution(inst, *cp.best);
    j["feasibility"] = {{"clean", rep.clean()}, {"worst_violation", rep.worst()}};
  } else {
    j["best_objective"] = nullptr;
  }
  emit(o, j.dump(2));
  return cp.best ? 0 : 2;
}

int cmd_relax(const CommonOpts& o, const std::string& formulation) {
  const Instance inst = load_instance(o.instance_path, o.l_seg);
  ProcessBackend backend(o.solver_cmd);
  double value = 0.0;
  int cuts = 0;
  if (formulation == "origin") {
    SolveOptions opts = SolveOptions::qcp_default();
    opts.relax_integrality = true;
    const SolveResult r = backend.solve(build_original_qcp(inst, false), opts);
    if (!r.has_solution()) throw BackendError("relaxation failed: " + r.message);
    value = r.objective;
  } else if (formulation == "cp_la") {
    const LaResult la = run_la(inst, backend, la_params_of(o));
    value = la.relaxation_value;
    cuts = la.omega_r.size();
  } else {
    SolveOptions opts = SolveOptions::lp_default();
    opts.relax_integrality = true;
    const SolveResult r =
        backend.solve(build_piecewise_model(inst, 5, formulation == "pc_pw"), opts);
    if (!r.has_solution()) throw BackendError("relaxation failed: " + r.message);
    value = r.objective;
    cuts = 5;
  }
  if (o.out_format == "csv") {
    emit(o, "formulation,value,cuts\n" + formulation + "," + std::to_string(value) + "," +
                std::to_string(cuts) + "\n");
  } else {
    emit(o, json{{"formulation", formulation}, {"value", value}, {"cuts", cuts}}.dump(2));
  }
  return 0;
}

int cmd_tightness(const CommonOpts& o) {
  const Instance inst = load_instance(o.instance_path, o.l_seg);
  ProcessBackend backend(o.solver_cmd);
  const TightnessReport rep = tightness_report(inst, backend, 5, la_params_of(o));
  if (o.out_format == "csv") {
    std::ostringstream os;
    os << "formulation,value,difference,cuts\n";
    auto line = [&](const char* name, const std::optional<double>& z, int cuts) {
      os << name << ",";
      if (z)
        os << *z << "," << (rep.z_origin ? std::to_string(*rep.z_origin - *z) : "-");
      else
        os << "-,-";
      os << "," << cuts << "\n";
    };
    line("origin", rep.z_origin, 0);
    line("cp_la", rep.z_cp_la, rep.cuts_cp_la);
    line("s_pw", rep.z_s_pw, rep.cuts_s_pw);
    line("pc_pw", rep.z_pc_pw, rep.cuts_pc_pw);
    emit(o, os.str());
  } else {
    json j;
    auto put = [&](const char* k, const std::optional<double>& z) {
      if (z) j[k] = *z;
    };
    put("z_origin", rep.z_origin);
    put("z_cp_la", rep.z_cp_la);
    put("z_s_pw", rep.z_s_pw);
    put("z_pc_pw", rep.z_pc_pw);
    put("diff_cp_la", rep.diff(rep.z_cp_la));
    put("diff_s_pw", rep.diff(rep.z_s_pw));
    put("diff_pc_pw", rep.diff(rep.z_pc_pw));
    j["cuts"] = {{"cp_la", rep.cuts_cp_la}, {"s_pw", rep.cuts_s_pw}, {"pc_pw", rep.cuts_pc_pw}};
    if (!rep.errors.empty()) j["errors"] = rep.errors;
    emit(o, j.dump(2));
  }
  return rep.errors.empty() ? 0 : 3;
}

int cmd_verify(const CommonOpts& o, double rel_tol) {
  const Instance inst = load_instance(o.instance_path, o.l_seg);
  const OracleResult oracle = enumerate_optimal(inst);
  if (!oracle.feasible) {
    std::cerr << "oracle: no feasible commitment pattern\n";
    return 2;
  }
  ProcessBackend backend(o.solver_cmd);
  const CpResult cp = run_cp(inst, backend, la_params_of(o), cp_params_of(o));
  const bool found = cp.best.has_value();
  const bool pass =
      found && cp.best_objective <= oracle.optimum * (1.0 + rel_tol) + 1e-9;
  json j;
  j["oracle_optimum"] = oracle.optimum;
  j["oracle_patterns"] = {{"enumerated", oracle.enumerated},
                          {"feasible", oracle.feasible_patterns}};
  j["cp_objective"] = found ? json(cp.best_objective) : json(nullptr);
  j["cp_termination"] = to_string(cp.termination);
  j["rel_tol"] = rel_tol;
  j["pass"] = pass;
  emit(o, j.dump(2));
  return pass ? 0 : 4;
}

int cmd_generate(const CommonOpts& o, const std::string& base_path,
                 std::vector<int> counts, int preset, const std::string& profile_csv_list,
                 GeneratorSpec spec) {
  std::vector<UnitParams> base;
  if (base_path.size() > 4 && base_path.substr(base_path.size() - 4) == ".csv") {
    base = load_units_csv(base_path);
  } else {
    const Instance bi = load_instance(base_path);
    base = bi.units;
  }
  if (preset > 0) {
    const auto& presets = replication_presets();
    if (preset > static_cast<int>(presets.size()))
      throw ValidationError("preset out of range 1.." + std::to_string(presets.size()));
    spec.counts.assign(presets[preset - 1].begin(), presets[preset - 1].end());
  } else {
    spec.counts = std::move(counts);
  }
  if (!profile_csv_list.empty()) {
    spec.demand_profile.clear();
    std::istringstream is(profile_csv_list);
    std::string tok;
    while (std::getline(is, tok, ',')) spec.demand_profile.push_back(std::stod(tok));
  } else if (spec.demand_profile.empty()) {
    spec.demand_profile = default_demand_profile();
  }
  spec.cost_segments = o.l_seg;
  const Instance inst = generate_instance(spec, base);
  if (o.output_path.empty()) throw CLI::ValidationError("--output", "generate requires --output");
  save_instance(inst, o.output_path);
  std::cout << "wrote " << o.output_path << " (" << inst.n_units() << " units, horizon "
            << inst.horizon() << ")\n";
  return 0;
}

int cmd_bench(const CommonOpts& o, const std::vector<std::string>& instance_paths,
              const std::string& mode, int workers) {
  std::vector<std::pair<std::string, Instance>> instances;
  for (const auto& path : instance_paths)
    instances.emplace_back(path, load_instance(path, o.l_seg));
  const std::string cmd = o.solver_cmd;
  BackendFactory factory = [cmd]() { return std::make_unique<ProcessBackend>(cmd); };
  const BenchmarkReport report =
      bench_run(instances, factory, la_params_of(o), cp_params_of(o), mode, workers);
  emit(o, o.out_format == "csv" ? report.to_csv() : report.to_json());
  for (const auto& r : report.instances)
    if (!r.error.empty()) return 3;
  return 0;
}

int cmd_profile(const CommonOpts& o, const std::string& input_path) {
  std::ifstream in(input_path);
  if (!in) throw std::runtime_error("cannot open " + input_path);
  json j;
  in >> j;
  ProfileInput input;
  input.methods = j.at("methods").get<std::vector<std::string>>();
  input.problems = j.at("problems").get<std::vector<std::string>>();
  input.metric = j.at("metric").get<std::vector<std::vector<double>>>();
  const auto curves = performance_profile(input);
  emit(o, profile_csv(curves));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"center-point solver for unit commitment with carbon emission trading"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string formulation = "cp_la", mode = "cp", base_path, profile_list, profile_input;
  std::vector<int> counts;
  std::vector<std::string> bench_paths;
  int preset = 0, workers = 1;
  double verify_tol = 0.005;
  GeneratorSpec spec;

  auto* solve = app.add_subcommand("solve", "run the center-point algorithm");
  add_common(solve, o);

  auto* relax = app.add_subcommand("relax", "continuous-relaxation value of one formulation");
  add_common(relax, o);
  relax->add_option("--formulation", formulation, "cp_la|s_pw|pc_pw|origin")
      ->check(CLI::IsMember({"cp_la", "s_pw", "pc_pw", "origin"}));

  auto* tight = app.add_subcommand("tightness", "compare all four formulations");
  add_common(tight, o);

  auto* gen = app.add_subcommand("generate", "replicate a base fleet into an instance");
  add_common(gen, o, false);
  gen->add_option("--base", base_path, "base unit dataset (JSON instance or CSV table)")
      ->required();
  gen->add_option("--counts", counts, "replication count per base unit type");
  gen->add_option("--preset", preset, "standard replication row (1..22)");
  gen->add_option("--demand-profile", profile_list, "comma-separated capacity fractions");
  gen->add_option("--reserve-fraction", spec.reserve_fraction, "reserve as demand fraction");
  gen->add_option("--e0-per-mw", spec.e0_per_mwday, "allowance budget per MW capacity");
  gen->add_option("--quota-fraction", spec.quota_fraction, "trade cap as budget fraction");
  gen->add_option("--pi-b", spec.pi_b, "allowance buy price");
  gen->add_option("--pi-s", spec.pi_s, "allowance sell price");
  double perturb = -1.0;
  unsigned seed = 0;
  bool has_seed = false;
  gen->add_option("--seed", seed, "perturbation seed (omit for exact replication)")
      ->each([&](const std::string&) { has_seed = true; });
  gen->add_option("--perturbation", perturb, "relative jitter when seeded");

  auto* bench = app.add_subcommand("bench", "run the benchmark harness");
  add_common(bench, o, false);
  bench->add_option("--instance", bench_paths, "instance files (repeatable)")->required();
  bench->add_option("--mode", mode, "cp|direct")->check(CLI::IsMember({"cp", "direct"}));
  bench->add_option("--workers", workers, "concurrent instances");

  auto* prof = app.add_subcommand("profile", "performance profile from a metric matrix");
  add_common(prof, o, false);
  prof->add_option("--input", profile_input, "JSON with methods/problems/metric")->required();

  auto* verify = app.add_subcommand("verify", "cross-check against exhaustive enumeration");
  add_common(verify, o);
  verify->add_option("--rel-tol", verify_tol, "acceptable relative excess over the optimum");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(o);
    if (relax->parsed()) return cmd_relax(o, formulation);
    if (tight->parsed()) return cmd_tightness(o);
    if (gen->parsed()) {
      if (has_seed) {
        spec.seed = seed;
        if (perturb >= 0.0) spec.perturbation = perturb;
      }
      return cmd_generate(o, base_path, counts, preset, profile_list, spec);
    }
    if (bench->parsed()) return cmd_bench(o, bench_paths, mode, workers);
    if (prof->parsed()) return cmd_profile(o, profile_input);
    if (verify->parsed()) return cmd_verify(o, verify_tol);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const InstanceInfeasible& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 2;
  } catch (const NoInteriorPoint& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 2;
  } catch (const BackendError& e) {
    std::cerr << "backend error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
