#include "godron/report.hpp"

#include <json.hpp>

#include "godron/error.hpp"

namespace godron {

using nlohmann::json;

namespace {

ReportPoint point_record(const CharPoint& p) {
  ReportPoint r;
  r.kind = to_string(p.kind);
  r.chart = p.param.chart;
  r.s = p.param.s;
  r.t = p.param.t;
  r.position = {p.position.x, p.position.y, p.position.z};
  r.sign = p.sign;
  r.index = p.index;
  r.rho = p.rho;
  r.sigma = p.sigma;
  r.rho_platonova = p.rho_platonova;
  r.winding = p.winding;
  r.asymptotic_winding = p.asymptotic_winding;
  return r;
}

ReportCheck check_record(const IdentityCheck& c) { return {c.name, c.lhs, c.rhs, c.pass}; }

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

json optional_rational(const std::optional<Rational>& v) { return v ? json(v->to_string()) : json(nullptr); }

json to_json(const ReportPoint& p) {
  return {{"kind", p.kind},
          {"chart", p.chart},
          {"s", p.s},
          {"t", p.t},
          {"position", p.position},
          {"sign", p.sign},
          {"index", p.index.to_string()},
          {"rho", optional_json(p.rho)},
          {"sigma", optional_json(p.sigma)},
          {"rho_platonova", optional_json(p.rho_platonova)},
          {"winding", optional_rational(p.winding)},
          {"asymptotic_winding", optional_rational(p.asymptotic_winding)}};
}

json to_json(const ReportCheck& c) {
  return {{"name", c.name}, {"lhs", c.lhs.to_string()}, {"rhs", c.rhs.to_string()}, {"pass", c.pass}};
}

template <class T>
std::optional<T> read_optional(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<T>();
}

std::optional<Rational> read_optional_rational(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return Rational::parse(v.get<std::string>());
}

ReportPoint point_from_json(const json& j) {
  ReportPoint p;
  p.kind = j.at("kind").get<std::string>();
  p.chart = j.at("chart").get<int>();
  p.s = j.at("s").get<double>();
  p.t = j.at("t").get<double>();
  p.position = j.at("position").get<std::array<double, 3>>();
  p.sign = j.at("sign").get<int>();
  p.index = Rational::parse(j.at("index").get<std::string>());
  p.rho = read_optional<double>(j, "rho");
  p.sigma = read_optional<int>(j, "sigma");
  p.rho_platonova = read_optional<double>(j, "rho_platonova");
  p.winding = read_optional_rational(j, "winding");
  p.asymptotic_winding = read_optional_rational(j, "asymptotic_winding");
  return p;
}

ReportCheck check_from_json(const json& j) {
  return {j.at("name").get<std::string>(), Rational::parse(j.at("lhs").get<std::string>()),
          Rational::parse(j.at("rhs").get<std::string>()), j.at("pass").get<bool>()};
}

}  // namespace

Report make_report(const Analysis& a) {
  Report r;
  r.surface_id = a.surface_id;
  if (a.spec) {
    r.surface = a.spec->name;
    r.params = a.spec->params;
  }
  r.grid = a.options.grid;
  r.seed_grid = a.options.seed_grid ? a.options.seed_grid : a.options.grid;
  r.tol_parabolic = a.options.tol_parabolic;
  r.chi_surface = a.verification.chi_surface;
  r.verdict = a.verification.verdict;
  r.exit_code = a.exit_code;
  r.parabolic_polylines = static_cast<int>(a.parabolic.polylines.size());
  r.flecnodal_polylines = static_cast<int>(a.flecnodal.polylines.size());
  for (const auto& n : a.nodes) r.nodes.push_back(point_record(n));
  for (const auto& g : a.godrons) r.godrons.push_back(point_record(g));
  for (const auto& rec : a.verification.regions) {
    ReportRegion reg;
    reg.id = rec.id;
    reg.kind = to_string(rec.kind);
    reg.chi = rec.chi;
    reg.signed_nodes = rec.signed_nodes;
    reg.signed_godrons = rec.signed_godrons;
    reg.index_sum = rec.index_sum;
    if (rec.id >= 0 && rec.id < static_cast<int>(a.regions.size())) {
      reg.nodes = a.regions[rec.id].interior_nodes;
      reg.godrons = a.regions[rec.id].boundary_godrons;
    }
    for (const auto& c : rec.checks) reg.checks.push_back(check_record(c));
    r.regions.push_back(std::move(reg));
  }
  for (const auto& c : a.verification.global) r.global.push_back(check_record(c));
  r.warnings = a.warnings;
  return r;
}

std::string write_report_json(const Report& r) {
  json j;
  j["surface_id"] = r.surface_id;
  j["surface"] = r.surface;
  j["params"] = r.params;
  j["grid"] = r.grid;
  j["seed_grid"] = r.seed_grid;
  j["tol_parabolic"] = r.tol_parabolic;
  j["chi_surface"] = r.chi_surface;
  j["verdict"] = r.verdict;
  j["exit_code"] = r.exit_code;
  j["traces"] = {{"parabolic_polylines", r.parabolic_polylines}, {"flecnodal_polylines", r.flecnodal_polylines}};
  j["nodes"] = json::array();
  for (const auto& p : r.nodes) j["nodes"].push_back(to_json(p));
  j["godrons"] = json::array();
  for (const auto& p : r.godrons) j["godrons"].push_back(to_json(p));
  j["regions"] = json::array();
  for (const auto& reg : r.regions) {
    json jr = {{"id", reg.id},
               {"kind", reg.kind},
               {"chi", reg.chi},
               {"signed_nodes", reg.signed_nodes},
               {"signed_godrons", reg.signed_godrons},
               {"index_sum", reg.index_sum.to_string()},
               {"nodes", reg.nodes},
               {"godrons", reg.godrons},
               {"checks", json::array()}};
    for (const auto& c : reg.checks) jr["checks"].push_back(to_json(c));
    j["regions"].push_back(std::move(jr));
  }
  j["global"] = json::array();
  for (const auto& c : r.global) j["global"].push_back(to_json(c));
  j["warnings"] = r.warnings;
  return j.dump(2) + "\n";
}

Report parse_report_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    Report r;
    r.surface_id = j.at("surface_id").get<std::string>();
    r.surface = j.at("surface").get<std::string>();
    r.params = j.at("params").get<std::map<std::string, double>>();
    r.grid = j.at("grid").get<int>();
    r.seed_grid = j.at("seed_grid").get<int>();
    r.tol_parabolic = j.at("tol_parabolic").get<double>();
    r.chi_surface = j.at("chi_surface").get<int>();
    r.verdict = j.at("verdict").get<std::string>();
    r.exit_code = j.at("exit_code").get<int>();
    r.parabolic_polylines = j.at("traces").at("parabolic_polylines").get<int>();
    r.flecnodal_polylines = j.at("traces").at("flecnodal_polylines").get<int>();
    for (const auto& p : j.at("nodes")) r.nodes.push_back(point_from_json(p));
    for (const auto& p : j.at("godrons")) r.godrons.push_back(point_from_json(p));
    for (const auto& jr : j.at("regions")) {
      ReportRegion reg;
      reg.id = jr.at("id").get<int>();
      reg.kind = jr.at("kind").get<std::string>();
      reg.chi = jr.at("chi").get<int>();
      reg.signed_nodes = jr.at("signed_nodes").get<int>();
      reg.signed_godrons = jr.at("signed_godrons").get<int>();
      reg.index_sum = Rational::parse(jr.at("index_sum").get<std::string>());
      reg.nodes = jr.at("nodes").get<std::vector<int>>();
      reg.godrons = jr.at("godrons").get<std::vector<int>>();
      for (const auto& c : jr.at("checks")) reg.checks.push_back(check_from_json(c));
      r.regions.push_back(std::move(reg));
    }
    for (const auto& c : j.at("global")) r.global.push_back(check_from_json(c));
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    return r;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed report: ") + e.what());
  }
}

}  // namespace godron
