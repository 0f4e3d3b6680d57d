#include "uccet/instance_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace uccet {

using nlohmann::json;

namespace {

UnitParams unit_from_json(const json& j, int index) {
  UnitParams u;
  try {
    u.alpha = j.at("alpha").get<double>();
    u.beta = j.at("beta").get<double>();
    u.gamma = j.at("gamma").get<double>();
    u.c_hot = j.at("c_hot").get<double>();
    u.c_cold = j.at("c_cold").get<double>();
    u.t_cold = j.at("t_cold").get<int>();
    u.p_min = j.at("p_min").get<double>();
    u.p_max = j.at("p_max").get<double>();
    u.p_up = j.at("p_up").get<double>();
    u.p_down = j.at("p_down").get<double>();
    u.p_start = j.at("p_start").get<double>();
    u.p_shut = j.at("p_shut").get<double>();
    u.u0 = j.at("u0").get<int>();
    u.t0 = j.at("t0").get<int>();
    u.t_on = j.at("t_on").get<int>();
    u.t_off = j.at("t_off").get<int>();
    u.a_e = j.at("a_e").get<double>();
    u.b_e = j.at("b_e").get<double>();
    u.c_e = j.at("c_e").get<double>();
  } catch (const json::exception& e) {
    throw ValidationError("unit " + std::to_string(index) + ": " + e.what());
  }
  return u;
}

json unit_to_json(const UnitParams& u) {
  return json{{"alpha", u.alpha},     {"beta", u.beta},       {"gamma", u.gamma},
              {"c_hot", u.c_hot},     {"c_cold", u.c_cold},   {"t_cold", u.t_cold},
              {"p_min", u.p_min},     {"p_max", u.p_max},     {"p_up", u.p_up},
              {"p_down", u.p_down},   {"p_start", u.p_start}, {"p_shut", u.p_shut},
              {"u0", u.u0},           {"t0", u.t0},           {"t_on", u.t_on},
              {"t_off", u.t_off},     {"a_e", u.a_e},         {"b_e", u.b_e},
              {"c_e", u.c_e}};
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) {
    // trim surrounding whitespace
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    fields.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
  }
  return fields;
}

}  // namespace

std::vector<UnitParams> load_units_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open unit table: " + path);
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("empty unit table: " + path);
  const auto header = split_csv_line(line);

  std::vector<UnitParams> units;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size())
      throw ValidationError(path + ":" + std::to_string(row) + ": expected " +
                            std::to_string(header.size()) + " fields, got " +
                            std::to_string(fields.size()));
    json j;
    for (size_t k = 0; k < header.size(); ++k) {
      try {
        j[header[k]] = std::stod(fields[k]);
      } catch (const std::exception&) {
        throw ValidationError(path + ":" + std::to_string(row) + ": bad number '" +
                              fields[k] + "' in column " + header[k]);
      }
    }
    units.push_back(unit_from_json(j, static_cast<int>(units.size())));
  }
  return units;
}

Instance load_instance(const std::string& path, std::optional<int> cost_segments) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open instance file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  }

  std::vector<UnitParams> units;
  const auto& ju = j.at("units");
  if (ju.is_string()) {
    auto csv = std::filesystem::path(path).parent_path() / ju.get<std::string>();
    units = load_units_csv(csv.string());
  } else if (ju.is_array()) {
    for (size_t i = 0; i < ju.size(); ++i)
      units.push_back(unit_from_json(ju[i], static_cast<int>(i)));
  } else {
    throw ValidationError(path + ": 'units' must be an array or a CSV path");
  }

  SystemParams system;
  const auto& js = j.at("system");
  system.horizon = js.at("horizon").get<int>();
  system.demand = js.at("demand").get<std::vector<double>>();
  system.reserve = js.at("reserve").get<std::vector<double>>();

  CETParams cet;
  const auto& jc = j.at("cet");
  cet.pi_b = jc.at("pi_b").get<double>();
  cet.pi_s = jc.at("pi_s").get<double>();
  cet.e0 = jc.at("e0").get<double>();
  cet.de_b_max = jc.at("de_b_max").get<double>();
  cet.de_s_max = jc.at("de_s_max").get<double>();

  int segments = j.value("cost_segments", 4);
  if (cost_segments) segments = *cost_segments;
  return derive_instance(std::move(units), std::move(system), cet, segments);
}

void save_instance(const Instance& inst, const std::string& path) {
  json j;
  j["units"] = json::array();
  for (const auto& u : inst.units) j["units"].push_back(unit_to_json(u));
  j["system"] = {{"horizon", inst.system.horizon},
                 {"demand", inst.system.demand},
                 {"reserve", inst.system.reserve}};
  j["cet"] = {{"pi_b", inst.cet.pi_b},
              {"pi_s", inst.cet.pi_s},
              {"e0", inst.cet.e0},
              {"de_b_max", inst.cet.de_b_max},
              {"de_s_max", inst.cet.de_s_max}};
  j["cost_segments"] = inst.cost_segments;
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write instance file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace uccet
