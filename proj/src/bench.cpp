#include "uccet/bench.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "uccet/builder.hpp"

namespace uccet {

TightnessReport tightness_report(const Instance& inst, SolverBackend& backend,
                                 int piecewise_breakpoints, const LaParams& la_params) {
  TightnessReport rep;
  rep.cuts_s_pw = piecewise_breakpoints;
  rep.cuts_pc_pw = piecewise_breakpoints;

  SolveOptions lp = SolveOptions::lp_default();
  lp.relax_integrality = true;
  SolveOptions qcp = SolveOptions::qcp_default();
  qcp.relax_integrality = true;

  try {
    const SolveResult r = backend.solve(build_original_qcp(inst, false), qcp);
    if (r.has_solution())
      rep.z_origin = r.objective;
    else
      rep.errors.push_back("origin: " + std::string(to_string(r.status)) + " " + r.message);
  } catch (const std::exception& e) {
    rep.errors.push_back(std::string("origin: ") + e.what());
  }
  try {
    const LaResult la = run_la(inst, backend, la_params);
    rep.z_cp_la = la.relaxation_value;
    rep.cuts_cp_la = la.omega_r.size();
  } catch (const std::exception& e) {
    rep.errors.push_back(std::string("cp_la: ") + e.what());
  }
  for (bool perspective : {false, true}) {
    try {
      const SolveResult r =
          backend.solve(build_piecewise_model(inst, piecewise_breakpoints, perspective), lp);
      auto& slot = perspective ? rep.z_pc_pw : rep.z_s_pw;
      if (r.has_solution())
        slot = r.objective;
      else
        rep.errors.push_back(std::string(perspective ? "pc_pw: " : "s_pw: ") +
                             to_string(r.status) + " " + r.message);
    } catch (const std::exception& e) {
      rep.errors.push_back(std::string(perspective ? "pc_pw: " : "s_pw: ") + e.what());
    }
  }
  return rep;
}

namespace {

TargetCrossing crossing_from_trace(const CpResult& cp, double target) {
  TargetCrossing out;
  for (const auto& rec : cp.trace) {
    if (!std::isnan(rec.incumbent_obj) && rec.incumbent_obj <= target) {
      out.reached = true;
      out.objective = rec.incumbent_obj;
      out.time_s = rec.cum_time_s;
      out.iterations = rec.k + 1;
      return out;
    }
  }
  return out;
}

BenchInstanceReport run_one(const std::string& name, const Instance& inst,
                            SolverBackend& backend, const LaParams& la_params,
                            const CpParams& cp_params, const std::string& mode) {
  BenchInstanceReport rep;
  rep.name = name;
  rep.n_units = inst.n_units();
  rep.mode = mode;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    rep.tightness = tightness_report(inst, backend, 5, la_params);
    if (!rep.tightness.z_origin)
      throw AlgorithmError("exact relaxation unavailable; targets undefined");
    const double z = *rep.tightness.z_origin;

    if (mode == "cp") {
      CpResult cp = run_cp(inst, backend, la_params, cp_params);
      rep.termination = to_string(cp.termination);
      if (cp.best) rep.best_objective = cp.best_objective;
      rep.within_5pct = crossing_from_trace(cp, 1.05 * z);
      rep.within_1pct = crossing_from_trace(cp, 1.01 * z);
      // LA already solved the relaxation once; prefer its cut count.
      rep.tightness.z_cp_la = cp.la_relaxation_value;
      rep.tightness.cuts_cp_la = cp.la_cuts;
    } else if (mode == "direct") {
      SolveOptions opts = SolveOptions::milp_default();
      opts.time_limit = cp_params.time_limit;
      const SolveResult r = backend.solve(build_original_qcp(inst, true), opts);
      rep.termination = to_string(r.status);
      if (r.has_solution()) {
        rep.best_objective = r.objective;
        for (auto* t : {&rep.within_5pct, &rep.within_1pct}) {
          const double target = (t == &rep.within_5pct ? 1.05 : 1.01) * z;
          if (r.objective <= target) {
            t->reached = true;
            t->objective = r.objective;
            t->time_s = r.solve_time;
            t->iterations = 1;
          }
        }
      }
    } else {
      throw std::invalid_argument("unknown bench mode: " + mode);
    }
  } catch (const std::exception& e) {
    rep.error = e.what();
  }
  rep.total_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

std::string opt_str(const std::optional<double>& v) {
  if (!v) return "-";
  std::ostringstream os;
  os.precision(10);
  os << *v;
  return os.str();
}

}  // namespace

BenchmarkReport bench_run(const std::vector<std::pair<std::string, Instance>>& instances,
                          const BackendFactory& make_backend, const LaParams& la_params,
                          const CpParams& cp_params, const std::string& mode, int workers) {
  BenchmarkReport report;
  report.instances.resize(instances.size());
  workers = std::max(1, std::min<int>(workers, static_cast<int>(instances.size())));

  std::atomic<size_t> next{0};
  auto worker = [&]() {
    auto backend = make_backend();
    for (size_t i = next.fetch_add(1); i < instances.size(); i = next.fetch_add(1))
      report.instances[i] = run_one(instances[i].first, instances[i].second, *backend,
                                    la_params, cp_params, mode);
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return report;
}

std::string BenchmarkReport::to_csv() const {
  std::ostringstream os;
  os << "name,n_units,mode,z_origin,z_cp_la,z_s_pw,z_pc_pw,diff_cp_la,diff_s_pw,diff_pc_pw,"
        "cuts_cp_la,cuts_s_pw,cuts_pc_pw,best_objective,termination,"
        "t5_reached,t5_obj,t5_time_s,t5_iters,t1_reached,t1_obj,t1_time_s,t1_iters,"
        "total_time_s,error\n";
  for (const auto& r : instances) {
    const auto& t = r.tightness;
    os << r.name << "," << r.n_units << "," << r.mode << "," << opt_str(t.z_origin) << ","
       << opt_str(t.z_cp_la) << "," << opt_str(t.z_s_pw) << "," << opt_str(t.z_pc_pw) << ","
       << opt_str(t.diff(t.z_cp_la)) << "," << opt_str(t.diff(t.z_s_pw)) << ","
       << opt_str(t.diff(t.z_pc_pw)) << "," << t.cuts_cp_la << "," << t.cuts_s_pw << ","
       << t.cuts_pc_pw << "," << opt_str(r.best_objective) << "," << r.termination << ",";
    for (const auto* c : {&r.within_5pct, &r.within_1pct})
      os << (c->reached ? "yes" : "no") << "," << (c->reached ? std::to_string(c->objective) : "-")
         << "," << (c->reached ? std::to_string(c->time_s) : "-") << ","
         << (c->reached ? std::to_string(c->iterations) : "-") << ",";
    os << r.total_time_s << "," << (r.error.empty() ? "-" : r.error) << "\n";
  }
  return os.str();
}

std::string BenchmarkReport::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  auto put_opt = [](nlohmann::json& obj, const char* key, const std::optional<double>& v) {
    if (v) obj[key] = *v;
  };
  for (const auto& r : instances) {
    nlohmann::json e;
    e["name"] = r.name;
    e["n_units"] = r.n_units;
    e["mode"] = r.mode;
    put_opt(e, "z_origin", r.tightness.z_origin);
    put_opt(e, "z_cp_la", r.tightness.z_cp_la);
    put_opt(e, "z_s_pw", r.tightness.z_s_pw);
    put_opt(e, "z_pc_pw", r.tightness.z_pc_pw);
    put_opt(e, "diff_cp_la", r.tightness.diff(r.tightness.z_cp_la));
    put_opt(e, "diff_s_pw", r.tightness.diff(r.tightness.z_s_pw));
    put_opt(e, "diff_pc_pw", r.tightness.diff(r.tightness.z_pc_pw));
    e["cuts"] = {{"cp_la", r.tightness.cuts_cp_la},
                 {"s_pw", r.tightness.cuts_s_pw},
                 {"pc_pw", r.tightness.cuts_pc_pw}};
    put_opt(e, "best_objective", r.best_objective);
    e["termination"] = r.termination;
    for (const auto& [key, c] :
         {std::pair{"within_5pct", &r.within_5pct}, std::pair{"within_1pct", &r.within_1pct}}) {
      nlohmann::json t;
      t["reached"] = c->reached;
      if (c->reached) {
        t["objective"] = c->objective;
        t["time_s"] = c->time_s;
        t["iterations"] = c->iterations;
      }
      e[key] = t;
    }
    e["total_time_s"] = r.total_time_s;
    if (!r.error.empty()) e["error"] = r.error;
    j.push_back(std::move(e));
  }
  return j.dump(2);
}

}  // namespace uccet
