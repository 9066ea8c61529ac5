#include "godron/spec_file.hpp"

#include <charconv>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "godron/error.hpp"

namespace godron {

using nlohmann::json;

namespace {

std::string shortest(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string canonical_key(const std::string& key) {
  if (key == "ρ") return "rho";
  if (key == "ε" || key == "epsilon") return "eps";
  if (key == "α") return "alpha";
  return key;
}

double parse_number(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto r = std::from_chars(first, last, v);
  if (r.ec != std::errc() || r.ptr != last) throw ValidationError("parameter '" + key + "': '" + text + "' is not a number");
  return v;
}

void add_token(std::map<std::string, double>& params, const std::string& token) {
  if (token.empty()) return;
  if (token == "+" || token == "-") {
    params["sign"] = token == "+" ? 1.0 : -1.0;
    return;
  }
  const auto eq = token.find('=');
  if (eq == std::string::npos || eq == 0) throw ValidationError("expected key=value, got '" + token + "'");
  const std::string key = canonical_key(token.substr(0, eq));
  params[key] = parse_number(key, token.substr(eq + 1));
}

std::string catalog_id(const std::string& name, const std::map<std::string, double>& params) {
  std::string id = "catalog:" + name;
  for (const auto& [k, v] : params) id += "," + k + "=" + shortest(v);
  return id;
}

SurfaceSource from_catalog(const std::string& name, const std::map<std::string, double>& params) {
  SurfaceSource src;
  src.spec = catalog(name, params);
  src.id = catalog_id(name, params);
  return src;
}

}  // namespace

SurfaceSource parse_spec_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("spec file is not valid JSON: ") + e.what());
  }
  try {
    if (!doc.is_object() || !doc.contains("surface")) throw ValidationError("spec file: missing \"surface\" section");
    const json& surf = doc.at("surface");
    SurfaceSource src;
    if (surf.contains("catalog")) {
      std::map<std::string, double> params;
      if (surf.contains("params"))
        for (const auto& [k, v] : surf.at("params").items()) params[canonical_key(k)] = v.get<double>();
      src = from_catalog(surf.at("catalog").get<std::string>(), params);
    } else if (surf.contains("monge_patch")) {
      const json& mp = surf.at("monge_patch");
      const std::string name = mp.value("name", std::string("monge_patch"));
      std::vector<Monomial> poly;
      for (const auto& m : mp.at("monomials")) {
        if (!m.is_array() || m.size() != 3) throw ValidationError("spec file: a monomial is [i, j, coefficient]");
        const int i = m[0].get<int>(), j = m[1].get<int>();
        if (i < 0 || j < 0) throw ValidationError("spec file: monomial exponents must be non-negative");
        poly.push_back({i, j, m[2].get<double>()});
      }
      const double half_width = mp.value("half_width", 0.5);
      if (!(half_width > 0.0)) throw ValidationError("spec file: half_width must be positive");
      src.spec = monge_patch(name, std::move(poly), half_width);
      src.id = "monge_patch:" + name;
    } else {
      throw ValidationError("spec file: \"surface\" needs \"catalog\" or \"monge_patch\"");
    }
    if (doc.contains("analysis")) {
      const json& an = doc.at("analysis");
      if (an.contains("grid")) src.grid = an.at("grid").get<int>();
      if (an.contains("seed_grid")) src.seed_grid = an.at("seed_grid").get<int>();
      if (an.contains("tol_parabolic")) src.tol_parabolic = an.at("tol_parabolic").get<double>();
    }
    return src;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("spec file: ") + e.what());
  }
}

SurfaceSource load_spec_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot read spec file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_spec_text(ss.str());
}

SurfaceSource resolve_surface(const std::string& argument, const std::vector<std::string>& extra) {
  static const std::string prefix = "catalog:";
  if (argument.rfind(prefix, 0) != 0) {
    if (!extra.empty()) throw ValidationError("parameters after a spec file path are not accepted");
    return load_spec_file(argument);
  }
  std::string rest = argument.substr(prefix.size());
  std::map<std::string, double> params;
  std::string name;
  std::stringstream ss(rest);
  std::getline(ss, name, ',');
  for (std::string tok; std::getline(ss, tok, ',');) add_token(params, tok);
  for (const auto& tok : extra) add_token(params, tok);
  if (name.empty()) throw ValidationError("catalog: missing surface name");
  return from_catalog(name, params);
}

}  // namespace godron
