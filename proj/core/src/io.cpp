#include "wvol/io.hpp"

#include "json.hpp"
#include "wvol/errors.hpp"

namespace wvol::io {

using nlohmann::json;

namespace {

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw ValidationError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError(std::string("field '") + key + "' has the wrong type");
  }
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("invalid JSON: ") + e.what());
  }
}

const char* solver_name(adapted::Solver s) {
  switch (s) {
    case adapted::Solver::brute_force: return "brute_force";
    case adapted::Solver::branch_and_bound: return "branch_and_bound";
    default: return "automatic";
  }
}

adapted::Solver solver_from(const std::string& s) {
  if (s == "brute_force") return adapted::Solver::brute_force;
  if (s == "branch_and_bound") return adapted::Solver::branch_and_bound;
  if (s == "automatic") return adapted::Solver::automatic;
  throw ValidationError("unknown solver '" + s + "'");
}

}  // namespace

std::string to_json(const engine::WVolumeReport& r, int indent) {
  json j = {
      {"label", r.label},
      {"log_rho1", r.log_rho1},
      {"log_rho2", r.log_rho2},
      {"volume", r.volume},
      {"epstein_H_integral", r.epstein_H_integral},
      {"caterpillar_terms", r.caterpillar_terms},
      {"edge_terms", r.edge_terms},
      {"edge_lengths", r.edge_lengths},
      {"plus_h_terms", r.plus_h_terms},
      {"plus_h_included", r.plus_h_included},
      {"edge_free_W", r.edge_free_W},
      {"total_W", r.total_W},
      {"error_estimate", r.error_estimate},
      {"tree_depth", r.tree_depth},
      {"cells", r.cells},
  };
  return j.dump(indent);
}

engine::WVolumeReport report_from_json(const std::string& text) {
  json j = parse(text);
  engine::WVolumeReport r;
  r.label = field<std::string>(j, "label");
  r.log_rho1 = field<double>(j, "log_rho1");
  r.log_rho2 = field<double>(j, "log_rho2");
  r.volume = field<double>(j, "volume");
  r.epstein_H_integral = field<double>(j, "epstein_H_integral");
  r.caterpillar_terms = field<std::vector<double>>(j, "caterpillar_terms");
  r.edge_terms = field<std::vector<double>>(j, "edge_terms");
  r.edge_lengths = field<std::vector<double>>(j, "edge_lengths");
  r.plus_h_terms = field<std::vector<double>>(j, "plus_h_terms");
  r.plus_h_included = field<bool>(j, "plus_h_included");
  r.edge_free_W = field<double>(j, "edge_free_W");
  r.total_W = field<double>(j, "total_W");
  r.error_estimate = field<double>(j, "error_estimate");
  r.tree_depth = field<int>(j, "tree_depth");
  r.cells = field<int>(j, "cells");
  return r;
}

adapted::CurveSystem curve_system_from_json(const std::string& text) {
  json j = parse(text);
  if (!j.is_object()) throw ValidationError("curve system must be a JSON object");
  adapted::CurveSystem sys;
  sys.genus_sum = field<int>(j, "genus_sum");
  json curves = field<json>(j, "curves");
  if (!curves.is_array()) throw ValidationError("field 'curves' must be an array");
  for (const json& c : curves) {
    if (!c.is_object()) throw ValidationError("each curve must be an object");
    sys.curves.push_back({field<int>(c, "id"), field<double>(c, "length"), field<bool>(c, "compressible")});
  }
  json pairs = j.contains("intersections") ? j.at("intersections") : json::array();
  if (!pairs.is_array()) throw ValidationError("field 'intersections' must be an array");
  for (const json& p : pairs) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
      throw ValidationError("each intersection must be a pair of curve ids");
    sys.intersections.emplace_back(p[0].get<int>(), p[1].get<int>());
  }
  if (j.contains("check_collars")) {
    if (!j.at("check_collars").is_boolean()) throw ValidationError("field 'check_collars' must be a boolean");
    sys.check_collars = j.at("check_collars").get<bool>();
  }
  sys.validate();
  return sys;
}

std::string to_json(const adapted::CurveSystem& sys, int indent) {
  json curves = json::array();
  for (const auto& c : sys.curves) curves.push_back({{"id", c.id}, {"length", c.length}, {"compressible", c.compressible}});
  json pairs = json::array();
  for (auto [a, b] : sys.intersections) pairs.push_back({a, b});
  json j{{"genus_sum", sys.genus_sum}, {"curves", curves}, {"intersections", pairs}};
  if (!sys.check_collars) j["check_collars"] = false;
  return j.dump(indent);
}

std::string to_json(const adapted::CorrectionResult& r, int indent) {
  json optima = json::array();
  for (const auto& o : r.optima) optima.push_back({{"members", o.members}, {"value", o.value}});
  return json{{"value", r.value},
              {"optima", optima},
              {"maximal_completion", r.maximal_completion},
              {"solver", solver_name(r.solver)}}
      .dump(indent);
}

adapted::CorrectionResult correction_from_json(const std::string& text) {
  json j = parse(text);
  adapted::CorrectionResult r;
  r.value = field<double>(j, "value");
  for (const json& o : field<json>(j, "optima"))
    r.optima.push_back({field<std::vector<int>>(o, "members"), field<double>(o, "value")});
  r.maximal_completion = field<std::vector<int>>(j, "maximal_completion");
  r.solver = solver_from(field<std::string>(j, "solver"));
  return r;
}

}  // namespace wvol::io
