#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "uccet/backend.hpp"

namespace uccet {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string sanitize(const std::string& tag) {
  std::string out;
  out.reserve(tag.size());
  for (char c : tag)
    out.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
                          c == '-' || c == '.'
                      ? c
                      : '_');
  if (out.empty()) out = "row";
  return out;
}

std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

double parse_num(const std::string& s, const std::string& context) {
  try {
    size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw BackendError(context + ": bad number '" + s + "'");
  }
}

}  // namespace

void write_problem_file(const ModelProblem& problem, const std::string& path) {
  problem.check_consistent();
  std::ofstream out(path);
  if (!out) throw BackendError("cannot write problem file: " + path);

  // Unique sanitized row names, tags preserved as closely as possible.
  std::vector<std::string> row_names;
  std::unordered_set<std::string> used{"COST"};
  auto unique_name = [&used](std::string base) {
    std::string name = base;
    int n = 1;
    while (!used.insert(name).second) name = base + "_" + std::to_string(++n);
    return name;
  };
  for (const auto& row : problem.rows) row_names.push_back(unique_name(sanitize(row.tag)));
  std::vector<std::string> quad_names;
  for (const auto& q : problem.quad_rows) quad_names.push_back(unique_name(sanitize(q.tag)));

  out << "NAME " << sanitize(problem.name) << "\n";
  if (problem.maximize) out << "OBJSENSE\n    MAX\n";
  out << "ROWS\n N COST\n";
  for (size_t r = 0; r < problem.rows.size(); ++r)
    out << " " << static_cast<char>(problem.rows[r].sense) << " " << row_names[r] << "\n";
  for (size_t r = 0; r < problem.quad_rows.size(); ++r)
    out << " L " << quad_names[r] << "\n";

  // Column-major coefficient lists. Every variable appears with its
  // objective coefficient so variable order survives the round trip.
  std::vector<double> obj(problem.vars.size(), 0.0);
  for (const auto& [j, c] : problem.objective) obj[j] += c;
  std::vector<std::vector<std::pair<std::string, double>>> col_entries(problem.vars.size());
  for (size_t r = 0; r < problem.rows.size(); ++r)
    for (const auto& [j, c] : problem.rows[r].coeffs)
      col_entries[j].emplace_back(row_names[r], c);
  for (size_t r = 0; r < problem.quad_rows.size(); ++r)
    for (const auto& [j, c] : problem.quad_rows[r].linear)
      if (c != 0.0) col_entries[j].emplace_back(quad_names[r], c);

  out << "COLUMNS\n";
  bool in_int = false;
  int marker = 0;
  for (size_t j = 0; j < problem.vars.size(); ++j) {
    if (problem.vars[j].integral != in_int) {
      in_int = problem.vars[j].integral;
      out << "    MARKER" << marker++ << " 'MARKER' " << (in_int ? "'INTORG'" : "'INTEND'")
          << "\n";
    }
    const std::string& v = problem.vars[j].name;
    out << "    " << v << " COST " << fmt(obj[j]) << "\n";
    for (const auto& [row, c] : col_entries[j])
      out << "    " << v << " " << row << " " << fmt(c) << "\n";
  }
  if (in_int) out << "    MARKER" << marker++ << " 'MARKER' 'INTEND'\n";

  out << "RHS\n";
  for (size_t r = 0; r < problem.rows.size(); ++r)
    if (problem.rows[r].rhs != 0.0)
      out << "    RHS " << row_names[r] << " " << fmt(problem.rows[r].rhs) << "\n";
  for (size_t r = 0; r < problem.quad_rows.size(); ++r)
    if (problem.quad_rows[r].rhs != 0.0)
      out << "    RHS " << quad_names[r] << " " << fmt(problem.quad_rows[r].rhs) << "\n";

  out << "BOUNDS\n";
  for (const auto& v : problem.vars) {
    if (v.lb == v.ub) {
      out << " FX BND " << v.name << " " << fmt(v.lb) << "\n";
      continue;
    }
    if (std::isinf(v.lb))
      out << " MI BND " << v.name << "\n";
    else
      out << " LO BND " << v.name << " " << fmt(v.lb) << "\n";
    if (std::isinf(v.ub))
      out << " PL BND " << v.name << "\n";
    else
      out << " UP BND " << v.name << " " << fmt(v.ub) << "\n";
  }

  for (size_t r = 0; r < problem.quad_rows.size(); ++r) {
    out << "QCMATRIX " << quad_names[r] << "\n";
    for (const auto& [j, c] : problem.quad_rows[r].quad)
      out << "    " << problem.vars[j].name << " " << problem.vars[j].name << " "
          << fmt(c) << "\n";
  }
  out << "ENDATA\n";
  if (!out) throw BackendError("write failed: " + path);
}

ModelProblem read_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BackendError("cannot open problem file: " + path);

  ModelProblem m;
  std::unordered_map<std::string, int> row_index;   // linear rows
  std::unordered_map<std::string, int> quad_index;  // quadratic rows
  std::unordered_map<std::string, int> var_index;
  std::vector<char> row_sense;
  std::vector<std::string> row_order;

  auto var_of = [&](const std::string& name, bool integral) {
    auto it = var_index.find(name);
    if (it != var_index.end()) return it->second;
    const int j = m.add_var(name, 0.0, kInf, integral);
    var_index.emplace(name, j);
    return j;
  };

  enum class Section { none, rows, columns, rhs, bounds, qcmatrix, objsense };
  Section section = Section::none;
  std::string qc_row;
  bool in_int = false;
  std::string line;
  int lineno = 0;

  while (std::getline(in, line)) {
    ++lineno;
    const std::string ctx = path + ":" + std::to_string(lineno);
    if (line.empty() || line[0] == '*') continue;
    const bool header = !std::isspace(static_cast<unsigned char>(line[0]));
    auto tok = tokens(line);
    if (tok.empty()) continue;

    if (header) {
      const std::string& sec = tok[0];
      if (sec == "NAME") {
        if (tok.size() > 1) m.name = tok[1];
      } else if (sec == "OBJSENSE") {
        section = Section::objsense;
        if (tok.size() > 1) m.maximize = (tok[1] == "MAX" || tok[1] == "MAXIMIZE");
      } else if (sec == "ROWS") {
        section = Section::rows;
      } else if (sec == "COLUMNS") {
        section = Section::columns;
      } else if (sec == "RHS") {
        section = Section::rhs;
      } else if (sec == "RANGES") {
        section = Section::none;  // not produced by the writer
      } else if (sec == "BOUNDS") {
        section = Section::bounds;
      } else if (sec == "QCMATRIX") {
        if (tok.size() < 2) throw BackendError(ctx + ": QCMATRIX without row name");
        section = Section::qcmatrix;
        qc_row = tok[1];
        if (!quad_index.count(qc_row)) {
          auto it = row_index.find(qc_row);
          if (it == row_index.end())
            throw BackendError(ctx + ": QCMATRIX references unknown row " + qc_row);
          // Promote the linear row to a quadratic one.
          QuadConstraint q;
          q.tag = m.rows[it->second].tag;
          q.rhs = m.rows[it->second].rhs;
          for (const auto& [j, c] : m.rows[it->second].coeffs) q.linear.emplace_back(j, c);
          m.rows.erase(m.rows.begin() + it->second);
          quad_index.emplace(qc_row, static_cast<int>(m.quad_rows.size()));
          m.quad_rows.push_back(std::move(q));
          row_index.clear();
          for (size_t r = 0; r < m.rows.size(); ++r) row_index[m.rows[r].tag] = static_cast<int>(r);
        }
      } else if (sec == "ENDATA") {
        break;
      } else {
        throw BackendError(ctx + ": unknown section " + sec);
      }
      continue;
    }

    switch (section) {
      case Section::objsense:
        m.maximize = (tok[0] == "MAX" || tok[0] == "MAXIMIZE");
        break;
      case Section::rows: {
        if (tok.size() != 2) throw BackendError(ctx + ": expected 'sense name'");
        const char sense = tok[0][0];
        if (sense == 'N') break;  // objective row
        LinearConstraint row;
        row.sense = static_cast<Sense>(sense);
        row.tag = tok[1];
        row_index.emplace(tok[1], static_cast<int>(m.rows.size()));
        m.rows.push_back(std::move(row));
        break;
      }
      case Section::columns: {
        if (tok.size() >= 3 && tok[1] == "'MARKER'") {
          in_int = (tok[2] == "'INTORG'");
          break;
        }
        if (tok.size() != 3) throw BackendError(ctx + ": expected 'var row value'");
        const int j = var_of(tok[0], in_int);
        const double c = parse_num(tok[2], ctx);
        if (tok[1] == "COST") {
          if (c != 0.0) m.objective.emplace_back(j, c);
        } else if (auto it = row_index.find(tok[1]); it != row_index.end()) {
          m.rows[it->second].add(j, c);
        } else if (auto qt = quad_index.find(tok[1]); qt != quad_index.end()) {
          m.quad_rows[qt->second].linear.emplace_back(j, c);
        } else {
          throw BackendError(ctx + ": unknown row " + tok[1]);
        }
        break;
      }
      case Section::rhs: {
        if (tok.size() != 3) throw BackendError(ctx + ": expected 'RHS row value'");
        const double v = parse_num(tok[2], ctx);
        if (auto it = row_index.find(tok[1]); it != row_index.end())
          m.rows[it->second].rhs = v;
        else if (auto qt = quad_index.find(tok[1]); qt != quad_index.end())
          m.quad_rows[qt->second].rhs = v;
        else
          throw BackendError(ctx + ": unknown row " + tok[1]);
        break;
      }
      case Section::bounds: {
        const std::string& kind = tok[0];
        if (tok.size() < 3) throw BackendError(ctx + ": short bound line");
        const int j = var_of(tok[2], in_int);
        if (kind == "MI")
          m.vars[j].lb = -kInf;
        else if (kind == "PL")
          m.vars[j].ub = kInf;
        else if (tok.size() < 4)
          throw BackendError(ctx + ": bound needs a value");
        else if (kind == "LO")
          m.vars[j].lb = parse_num(tok[3], ctx);
        else if (kind == "UP")
          m.vars[j].ub = parse_num(tok[3], ctx);
        else if (kind == "FX")
          m.vars[j].lb = m.vars[j].ub = parse_num(tok[3], ctx);
        else
          throw BackendError(ctx + ": unknown bound type " + kind);
        break;
      }
      case Section::qcmatrix: {
        if (tok.size() != 3) throw BackendError(ctx + ": expected 'var var value'");
        if (tok[0] != tok[1])
          throw BackendError(ctx + ": only diagonal quadratic entries are supported");
        auto it = var_index.find(tok[0]);
        if (it == var_index.end()) throw BackendError(ctx + ": unknown variable " + tok[0]);
        m.quad_rows[quad_index.at(qc_row)].quad.emplace_back(it->second, parse_num(tok[2], ctx));
        break;
      }
      default:
        break;
    }
  }
  return m;
}

SolveResult parse_solution_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BackendError("cannot open solution file: " + path);
  SolveResult res;
  bool have_status = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string ctx = path + ":" + std::to_string(lineno);
    auto tok = tokens(line);
    if (tok.empty() || tok[0][0] == '#') continue;
    if (tok[0] == "status") {
      if (tok.size() != 2) throw BackendError(ctx + ": expected 'status <value>'");
      res.status = solve_status_from_string(tok[1]);
      have_status = true;
    } else if (tok[0] == "objective") {
      if (tok.size() != 2) throw BackendError(ctx + ": expected 'objective <num>'");
      res.objective = parse_num(tok[1], ctx);
    } else if (tok[0] == "solve_time") {
      if (tok.size() != 2) throw BackendError(ctx + ": expected 'solve_time <num>'");
      res.solve_time = parse_num(tok[1], ctx);
    } else if (tok[0] == "message") {
      res.message = line.substr(line.find("message") + 8);
    } else if (tok[0] == "var") {
      if (tok.size() != 3) throw BackendError(ctx + ": expected 'var <name> <num>'");
      res.primal[tok[1]] = parse_num(tok[2], ctx);
    } else {
      throw BackendError(ctx + ": unknown record '" + tok[0] + "'");
    }
  }
  if (!have_status) throw BackendError(path + ": no status record");
  return res;
}

}  // namespace uccet
