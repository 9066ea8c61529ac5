#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "godron/error.hpp"
#include "godron/surface.hpp"

namespace godron {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kQuarterPi = std::numbers::pi / 4.0;
constexpr double kGenericMargin = 1e-6;

Jet2 eval_polynomial(const std::vector<Monomial>& poly, const Jet2& x, const Jet2& y) {
  const int order = x.order();
  int max_i = 0, max_j = 0;
  for (const auto& m : poly) {
    max_i = std::max(max_i, m.i);
    max_j = std::max(max_j, m.j);
  }
  std::vector<Jet2> xp(max_i + 1, Jet2::constant(order, 1.0));
  std::vector<Jet2> yp(max_j + 1, Jet2::constant(order, 1.0));
  for (int k = 1; k <= max_i; ++k) xp[k] = xp[k - 1] * x;
  for (int k = 1; k <= max_j; ++k) yp[k] = yp[k - 1] * y;
  Jet2 out(order);
  for (const auto& m : poly) out += m.c * (xp[m.i] * yp[m.j]);
  return out;
}

// Asymmetric modulation of the tube radius of the perturbed torus.
Jet2 torus_harmonic(const Jet2& u, const Jet2& v) {
  return cos(u) * sin(v) + 0.5 * sin(2.0 * u + v + 0.3) + 0.3 * cos(u - 2.0 * v + 1.1);
}

std::array<Jet2, 3> torus_point(const Jet2& u, const Jet2& v, double major, const Jet2& tube) {
  const Jet2 ring = major + tube * cos(v);
  return {ring * cos(u), ring * sin(u), tube * sin(v)};
}

// Unit direction of a cube-sphere chart point.
std::array<Jet2, 3> cube_direction(int chart, const Jet2& a, const Jet2& b) {
  const int k = chart / 2;
  const double sign = chart % 2 == 0 ? 1.0 : -1.0;
  const int k1 = (k + 1) % 3, k2 = (k + 2) % 3;
  const int ta = sign > 0 ? k1 : k2;
  const int tb = sign > 0 ? k2 : k1;
  const int order = a.order();
  std::array<Jet2, 3> d{Jet2(order), Jet2(order), Jet2(order)};
  d[k] = Jet2::constant(order, sign);
  d[ta] = tan(a);
  d[tb] = tan(b);
  const Jet2 inv_len = pow(d[0] * d[0] + d[1] * d[1] + d[2] * d[2], -0.5);
  for (auto& c : d) c = c * inv_len;
  return d;
}

void check_keys(const std::string& name, const std::map<std::string, double>& params,
                const std::set<std::string>& allowed) {
  for (const auto& [k, v] : params) {
    if (!allowed.count(k)) throw ValidationError(name + ": unknown parameter '" + k + "'");
    if (!std::isfinite(v)) throw ValidationError(name + ": parameter '" + k + "' is not finite");
  }
}

double get(const std::map<std::string, double>& params, const std::string& key, double fallback) {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

double get_sign(const std::string& name, const std::map<std::string, double>& params) {
  const double s = get(params, "sign", 1.0);
  if (s != 1.0 && s != -1.0) throw ValidationError(name + ": sign must be +1 or -1");
  return s;
}

void require_generic(const std::string& name, double value, const std::string& condition) {
  if (!(std::abs(value) > kGenericMargin)) {
    throw ValidationError(name + ": genericity condition violated, " + condition + " required");
  }
}

SurfaceSpec patch_with_params(const std::string& name, std::vector<Monomial> poly,
                              const std::map<std::string, double>& params, double half_width) {
  SurfaceSpec spec = monge_patch(name, std::move(poly), half_width);
  spec.params = params;
  return spec;
}

}  // namespace

SurfaceSpec monge_patch(std::string name, std::vector<Monomial> polynomial, double half_width) {
  if (!(half_width > 0.0)) throw ValidationError("patch half width must be positive");
  for (const auto& m : polynomial) {
    if (m.i < 0 || m.j < 0) throw ValidationError("patch monomial exponents must be non-negative");
    if (!std::isfinite(m.c)) throw ValidationError("patch coefficient is not finite");
  }
  SurfaceSpec spec;
  spec.name = std::move(name);
  spec.kind = SurfaceKind::monge_patch;
  spec.domain = DomainKind::rectangle;
  spec.s_min = spec.t_min = -half_width;
  spec.s_max = spec.t_max = half_width;
  spec.polynomial = polynomial;
  spec.evaluator = [poly = std::move(polynomial)](int, const Jet2& s, const Jet2& t) {
    return std::array<Jet2, 3>{s, t, eval_polynomial(poly, s, t)};
  };
  return spec;
}

SurfaceSpec torus_of_revolution(double major, double minor) {
  if (!(minor > 0.0 && major > minor)) throw ValidationError("torus: 0 < r < R required");
  SurfaceSpec spec;
  spec.name = "torus";
  spec.params = {{"R", major}, {"r", minor}};
  spec.kind = SurfaceKind::parametric_torus;
  spec.domain = DomainKind::torus;
  spec.s_min = spec.t_min = 0.0;
  spec.s_max = spec.t_max = kTwoPi;
  spec.evaluator = [major, minor](int, const Jet2& u, const Jet2& v) {
    return torus_point(u, v, major, Jet2::constant(u.order(), minor));
  };
  return spec;
}

SurfaceSpec perturbed_torus(double major, double minor, double eps) {
  if (!(minor > 0.0 && major > minor * (1.0 + 2.0 * std::abs(eps)))) {
    throw ValidationError("perturbed_torus: 0 < r(1 + 2|eps|) < R required");
  }
  if (!(std::abs(eps) < 0.2)) throw ValidationError("perturbed_torus: |eps| < 0.2 required");
  SurfaceSpec spec = torus_of_revolution(major, minor);
  spec.name = "perturbed_torus";
  spec.params = {{"R", major}, {"r", minor}, {"eps", eps}};
  spec.evaluator = [major, minor, eps](int, const Jet2& u, const Jet2& v) {
    const Jet2 tube = minor * (1.0 + eps * torus_harmonic(u, v));
    return torus_point(u, v, major, tube);
  };
  return spec;
}

SurfaceSpec radial_sphere(double eps, double island_amplitude, double island_width) {
  if (!(std::abs(eps) <= 0.5)) throw ValidationError("radial_sphere: |eps| <= 0.5 required");
  if (!(island_width > 0.0)) throw ValidationError("radial_sphere: island width must be positive");
  if (!(std::abs(island_amplitude) < 2.0)) throw ValidationError("radial_sphere: |island| < 2 required");
  SurfaceSpec spec;
  spec.name = "radial_sphere";
  spec.params = {{"eps", eps}, {"island", island_amplitude}, {"width", island_width}};
  spec.kind = SurfaceKind::radial_sphere;
  spec.domain = DomainKind::cube_sphere;
  spec.s_min = spec.t_min = -kQuarterPi;
  spec.s_max = spec.t_max = kQuarterPi;
  spec.evaluator = [eps, island_amplitude, island_width](int chart, const Jet2& a, const Jet2& b) {
    const auto d = cube_direction(chart, a, b);
    const int order = a.order();
    // Radius of the cubic surface r^2 + eps p r^3 = 1 along d, p = d_x d_y d_z: Newton on the
    // scalar value first, then on jets, each jet step doubling the number of exact orders.
    const Jet2 p = d[0] * d[1] * d[2];
    const double p0 = p.value();
    double r0 = 1.0;
    for (int it = 0; it < 60; ++it) {
      const double g = r0 * r0 + eps * p0 * r0 * r0 * r0 - 1.0;
      const double dg = 2.0 * r0 + 3.0 * eps * p0 * r0 * r0;
      const double step = g / dg;
      r0 -= step;
      if (std::abs(step) < 1e-16) break;
    }
    Jet2 r = Jet2::constant(order, r0);
    for (int it = 0; it < 4; ++it) {
      const Jet2 g = r * r + eps * (p * r * r * r) - 1.0;
      const Jet2 dg = 2.0 * r + 3.0 * eps * (p * r * r);
      r = r - g / dg;
    }
    if (island_amplitude != 0.0) {
      const double w2 = island_width * island_width;
      r = r + island_amplitude * (d[1] * d[1] * exp((d[2] * 2.0 - 2.0) * (1.0 / w2)));
    }
    return std::array<Jet2, 3>{r * d[0], r * d[1], r * d[2]};
  };
  return spec;
}

std::vector<std::string> catalog_names() {
  return {"platonova",     "lp_hyperbonode",   "ot_hyperbonode", "pre_hyperbonode", "pre_ellipnode",
          "torus",         "torus_revolution", "perturbed_torus", "radial_sphere"};
}

SurfaceSpec catalog(const std::string& name, const std::map<std::string, double>& params) {
  if (name == "platonova") {
    check_keys(name, params, {"rho", "half_width"});
    const double rho = get(params, "rho", 2.0);
    require_generic(name, rho - 1.0, "rho != 1");
    return patch_with_params(name, {{0, 2, 0.5}, {2, 1, -1.0}, {4, 0, 0.5 * rho}}, {{"rho", rho}},
                             get(params, "half_width", 0.5));
  }
  if (name == "lp_hyperbonode") {
    check_keys(name, params, {"a", "b", "sign", "half_width"});
    const double a = get(params, "a", 2.0), b = get(params, "b", 1.0);
    const double sign = get_sign(name, params);
    require_generic(name, a * b - 1.0, "ab != 1");
    require_generic(name, a * b + 1.0, "ab != -1");
    return patch_with_params(
        name, {{1, 1, 1.0}, {3, 1, a / 6.0}, {1, 3, b / 6.0}, {4, 0, 1.0 / 24.0}, {0, 4, sign / 24.0}},
        {{"a", a}, {"b", b}, {"sign", sign}}, get(params, "half_width", 0.5));
  }
  if (name == "ot_hyperbonode") {
    check_keys(name, params, {"I", "J", "sign", "half_width"});
    const double i = get(params, "I", 1.0), j = get(params, "J", 2.0);
    const double sign = get_sign(name, params);
    require_generic(name, i * j - 1.0, "IJ != 1");
    require_generic(name, i * j + 1.0, "IJ != -1");
    return patch_with_params(
        name, {{1, 1, 1.0}, {3, 1, 1.0 / 6.0}, {1, 3, sign / 6.0}, {4, 0, i / 24.0}, {0, 4, j / 24.0}},
        {{"I", i}, {"J", j}, {"sign", sign}}, get(params, "half_width", 0.5));
  }
  if (name == "pre_hyperbonode") {
    check_keys(name, params, {"alpha", "u", "v", "a", "b", "I", "J", "half_width"});
    const double al = get(params, "alpha", 1.0), u = get(params, "u", 0.0), v = get(params, "v", 0.0);
    const double a = get(params, "a", 2.0), b = get(params, "b", 1.0);
    const double i = get(params, "I", 1.0), j = get(params, "J", 1.0);
    require_generic(name, al, "alpha != 0");
    require_generic(name, 4.0 * al * al * i * j - (2.0 * al * a - 3.0 * u * u) * (2.0 * al * b - 3.0 * v * v),
                    "4 alpha^2 IJ != (2 alpha a - 3u^2)(2 alpha b - 3v^2)");
    return patch_with_params(name,
                             {{1, 1, al},
                              {2, 1, 0.5 * u},
                              {1, 2, 0.5 * v},
                              {3, 1, a / 6.0},
                              {1, 3, b / 6.0},
                              {4, 0, i / 24.0},
                              {0, 4, j / 24.0}},
                             {{"alpha", al}, {"u", u}, {"v", v}, {"a", a}, {"b", b}, {"I", i}, {"J", j}},
                             get(params, "half_width", 0.5));
  }
  if (name == "pre_ellipnode") {
    check_keys(name, params, {"alpha", "a", "b", "c", "I", "J", "half_width"});
    const double al = get(params, "alpha", 1.0);
    const double a = get(params, "a", 0.0), b = get(params, "b", 0.0), c = get(params, "c", 0.0);
    const double i = get(params, "I", 1.0), j = get(params, "J", 1.0);
    require_generic(name, al, "alpha != 0");
    require_generic(name, (a - 3.0 * b) * (b - 3.0 * a) - (i - 3.0 * c) * (j - 3.0 * c),
                    "(a-3b)(b-3a) != (I-3c)(J-3c)");
    return patch_with_params(name,
                             {{2, 0, 0.5 * al},
                              {0, 2, 0.5 * al},
                              {3, 1, a / 6.0},
                              {1, 3, b / 6.0},
                              {2, 2, c / 4.0},
                              {4, 0, i / 24.0},
                              {0, 4, j / 24.0}},
                             {{"alpha", al}, {"a", a}, {"b", b}, {"c", c}, {"I", i}, {"J", j}},
                             get(params, "half_width", 0.5));
  }
  if (name == "torus" || name == "torus_revolution") {
    check_keys(name, params, {"R", "r"});
    return torus_of_revolution(get(params, "R", 2.0), get(params, "r", 1.0));
  }
  if (name == "perturbed_torus") {
    check_keys(name, params, {"R", "r", "eps"});
    return perturbed_torus(get(params, "R", 2.0), get(params, "r", 1.0), get(params, "eps", 0.05));
  }
  if (name == "radial_sphere") {
    check_keys(name, params, {"eps", "island", "width"});
    return radial_sphere(get(params, "eps", 0.3), get(params, "island", 0.0), get(params, "width", 0.3));
  }
  std::string known;
  for (const auto& n : catalog_names()) known += (known.empty() ? "" : ", ") + n;
  throw ValidationError("unknown catalog surface '" + name + "' (known: " + known + ")");
}

}  // namespace godron
