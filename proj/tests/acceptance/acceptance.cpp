// Acceptance run: one PASS/FAIL line per criterion, tolerances and runtime limits pinned here.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "godron/analysis.hpp"
#include "godron/error.hpp"
#include "godron/forms.hpp"
#include "godron/index.hpp"
#include "godron/locus.hpp"
#include "godron/surface.hpp"
#include "godron/topology.hpp"

using namespace godron;

namespace {

constexpr double kPi = std::numbers::pi;

// Pinned tolerances.
constexpr double kTolPlatonova = 1e-9;     // relative, criterion 1
constexpr double kTolHyperbonodeW = 1e-8;  // relative to the largest coefficient, criterion 2
constexpr double kTolLemmas = 1e-9;        // criterion 3
constexpr double kTolAngle = 1e-3;         // radians, criterion 4

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Criterion {
 public:
  explicit Criterion(Outcome& o) : o_(o) {}
  void require(bool ok, const std::string& what) {
    if (!ok && o_.pass) o_.detail = "first failure: " + what;
    o_.pass = o_.pass && ok;
  }

 private:
  Outcome& o_;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

PointForms forms_at(const SurfaceSpec& spec, double x, double y) {
  return fundamental_quantities(eval_monge_jet(spec, {0, x, y}, 4, FrameKind::parametric));
}

double max_abs(const BinaryForm& f) {
  double m = 0.0;
  for (int i = 0; i <= f.degree; ++i) m = std::max(m, std::abs(f.c[i]));
  return m;
}

double max_gap(const BinaryForm& a, const BinaryForm& b) {
  double m = 0.0;
  for (int i = 0; i <= a.degree; ++i) m = std::max(m, std::abs(a.c[i] - b.c[i]));
  return m;
}

double line_gap(double a, double b) {
  const double d = std::fmod(std::abs(a - b), kPi);
  return std::min(d, kPi - d);
}

BinaryForm random_form(std::mt19937& rng, int degree) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  BinaryForm f = BinaryForm::zero(degree);
  for (int i = 0; i <= degree; ++i) f.c[i] = u(rng);
  return f;
}

BinaryForm random_nondegenerate_q(std::mt19937& rng) {
  for (;;) {
    BinaryForm q = random_form(rng, 2);
    if (std::abs(hessian_of(q)) > 0.1) return q;
  }
}

SurfaceSpec patch_of(std::initializer_list<BinaryForm> forms) {
  std::vector<Monomial> poly;
  for (const auto& f : forms)
    for (int i = 0; i <= f.degree; ++i) poly.push_back({f.degree - i, i, f.c[i]});
  return monge_patch("forms", poly);
}

// Analyses shared by criteria 6 to 9, computed once.
const Analysis& analysis(const std::string& name, const std::map<std::string, double>& params, int grid) {
  static std::map<std::string, Analysis> cache;
  std::ostringstream key;
  key << name << "/" << grid;
  for (const auto& [k, v] : params) key << "/" << k << "=" << v;
  auto it = cache.find(key.str());
  if (it == cache.end()) {
    AnalysisOptions o;
    o.grid = grid;
    it = cache.emplace(key.str(), analyze(std::make_shared<const SurfaceSpec>(catalog(name, params)), name, o)).first;
  }
  return it->second;
}

const std::map<std::string, double> kTorus{{"eps", 0.05}};
const std::map<std::string, double> kConvex{};
const std::map<std::string, double> kIsland{{"island", 0.6}};

const IdentityCheck* find_check(const RegionRecord& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

Rational shrinking_node_winding(const SurfaceSpec& spec, int k) {
  for (double r = 0.02;; r *= 0.5) {
    try {
      return node_winding_index(spec, {0, 0.0, 0.0}, k, r);
    } catch (const ResolutionError&) {
      if (r < 1e-4) throw;
    }
  }
}

// 1. Platonova closed form of W.
Outcome check_fcf_exactness() {
  Outcome o;
  Criterion c(o);
  std::mt19937 rng(101);
  std::uniform_real_distribution<double> u(-0.1, 0.1);
  double worst = 0.0;
  for (double rho : {2.0, 0.5, -1.0}) {
    const SurfaceSpec spec = catalog("platonova", {{"rho", rho}});
    for (int k = 0; k < 20; ++k) {
      const double x = u(rng), y = u(rng);
      const BinaryForm want(3, {(-(4 * rho + 8) * y + (12 * rho * rho - 8 * rho) * x * x) * x, 6 * (y + rho * x * x),
                                -6 * rho * x, 1.0});
      const double err = max_gap(forms_at(spec, x, y).W, want) / max_abs(want);
      worst = std::max(worst, err);
      c.require(err <= kTolPlatonova, "rho " + fmt("%g", rho));
    }
  }
  if (o.pass) o.detail = "60 points, max rel err " + fmt("%.2e", worst) + " (tol 1e-9)";
  return o;
}

// 2. First-order expansion of W at a prenormal hyperbonode.
Outcome check_hyperbonode_leading_order() {
  Outcome o;
  Criterion c(o);
  std::mt19937 rng(102);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  double worst = 0.0;
  int draws = 0;
  while (draws < 10) {
    const double al = u(rng), uu = u(rng), vv = u(rng), a = u(rng), b = u(rng), I = u(rng), J = u(rng);
    const double det = 4 * al * al * I * J - (2 * al * a - 3 * uu * uu) * (2 * al * b - 3 * vv * vv);
    if (std::abs(al) < 0.2 || std::abs(det) < 0.1) continue;
    const SurfaceSpec spec =
        catalog("pre_hyperbonode", {{"alpha", al}, {"u", uu}, {"v", vv}, {"a", a}, {"b", b}, {"I", I}, {"J", J}});
    ++draws;
    // W ~ -(al/3)(2 al I x + (2 al a - 3u^2) y) dx^3 - (al/3)((2 al b - 3v^2) x + 2 al J y) dy^3
    const BinaryForm wx(3, {-al / 3 * 2 * al * I, 0.0, 0.0, -al / 3 * (2 * al * b - 3 * vv * vv)});
    const BinaryForm wy(3, {-al / 3 * (2 * al * a - 3 * uu * uu), 0.0, 0.0, -al / 3 * 2 * al * J});
    // Richardson-extrapolated central differences of the (polynomial) coefficients of W.
    const auto derivative = [&](double ex, double ey) {
      const auto central = [&](double h) {
        return (forms_at(spec, h * ex, h * ey).W - forms_at(spec, -h * ex, -h * ey).W) * (0.5 / h);
      };
      return (central(5e-4) * 4.0 - central(1e-3)) * (1.0 / 3.0);
    };
    const double scale = std::max({max_abs(wx), max_abs(wy), 1.0});
    const double err = std::max({max_abs(forms_at(spec, 0.0, 0.0).W), max_gap(derivative(1, 0), wx),
                                 max_gap(derivative(0, 1), wy)}) /
                       scale;
    worst = std::max(worst, err);
    c.require(err <= kTolHyperbonodeW, "draw " + std::to_string(draws));
  }
  if (o.pass) o.detail = "10 draws, max rel err " + fmt("%.2e", worst) + " (tol 1e-8)";
  return o;
}

// 3. Lemma suite on random forms.
Outcome check_lemma_suite() {
  Outcome o;
  Criterion c(o);
  std::mt19937 rng(103);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const BinaryForm q = random_nondegenerate_q(rng), l = random_form(rng, 1), cub = random_form(rng, 3);
    const double e1 = max_gap(forms_at(patch_of({q, q * l}), 0.0, 0.0).dH, 4.0 * hessian_of(q) * l);
    const double e2 = max_gap(lambda_op(q, cub), 0.5 * forms_at(patch_of({q, cub}), 0.0, 0.0).dH);
    const CubicSplitting s = split_cubic(q, cub);
    const CubicSplitting again = split_cubic(q, s.Wminus);
    const double e3 = std::max({max_gap(q * s.L + s.Wminus, cub), max_abs(again.L), max_gap(again.Wminus, s.Wminus)});
    const double e4 = max_abs(lambda_op(q, s.Wminus));
    const double e = std::max({e1, e2, e3, e4});
    worst = std::max(worst, e);
    c.require(e1 <= kTolLemmas, "dH of Q + QL");
    c.require(e2 <= kTolLemmas, "lambda C = dH / 2");
    c.require(e3 <= kTolLemmas, "splitting idempotence");
    c.require(e4 <= kTolLemmas, "lambda Wminus = 0");
  }
  if (o.pass) o.detail = "100 draws, max err " + fmt("%.2e", worst) + " (tol 1e-9)";
  return o;
}

double periodic_distance(const ChartPoint& a, const ChartPoint& b) {
  const auto d = [](double x, double y) {
    const double r = std::fmod(std::abs(x - y), 2 * kPi);
    return std::min(r, 2 * kPi - r);
  };
  return std::hypot(d(a.s, b.s), d(a.t, b.t));
}

// 4. Root counts of W and the parabolic picture.
Outcome check_root_counts() {
  Outcome o;
  Criterion c(o);
  std::mt19937 rng(104);
  int elliptic = 0, hyperbolic = 0;
  const std::vector<SurfaceSpec> fixtures{catalog("perturbed_torus", kTorus), catalog("radial_sphere", kIsland),
                                          catalog("platonova", {{"rho", 2.0}})};
  std::uniform_int_distribution<int> pick(0, static_cast<int>(fixtures.size()) - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (elliptic < 100 || hyperbolic < 100) {
    const SurfaceSpec& spec = fixtures[pick(rng)];
    ChartPoint p{spec.closed() ? std::uniform_int_distribution<int>(0, spec.chart_count() - 1)(rng) : 0,
                 spec.s_min + unit(rng) * (spec.s_max - spec.s_min), spec.t_min + unit(rng) * (spec.t_max - spec.t_min)};
    const PointForms pf = fundamental_quantities(eval_monge_jet(spec, p, 4));
    const double q2 = pf.Q.norm() * pf.Q.norm();
    // Generic: clear of the parabolic curve and of nodes.
    if (std::abs(pf.H0) < 0.05 * q2 || pf.W.norm() < 1e-3 * q2 * pf.Q.norm()) continue;
    const int lines = real_zero_lines(pf.W).count();
    if (pf.H0 > 0 && elliptic < 100) {
      ++elliptic;
      c.require(lines == 3, "elliptic point with " + std::to_string(lines) + " lines");
    } else if (pf.H0 < 0 && hyperbolic < 100) {
      ++hyperbolic;
      c.require(lines == 1, "hyperbolic point with " + std::to_string(lines) + " lines");
    }
  }

  const SurfaceSpec& torus = fixtures[0];
  const CurveTrace tr = trace_parabolic(torus, 128);
  const GodronSearch gs = find_godrons(tr, torus);
  std::vector<ChartPoint> vertices;
  for (const auto& pl : tr.polylines)
    for (std::size_t k = 1; k + 1 < pl.points.size(); ++k) {
      bool near_godron = false;
      for (const auto& g : gs.godrons) near_godron |= periodic_distance(g.param, pl.points[k]) < 0.05;
      if (!near_godron) vertices.push_back(pl.points[k]);
    }
  const std::size_t stride = std::max<std::size_t>(1, vertices.size() / 50);
  int checked = 0;
  double worst = 0.0;
  for (std::size_t k = 0; k < vertices.size() && checked < 50; k += stride, ++checked) {
    const PointForms pf = fundamental_quantities(eval_monge_jet(torus, vertices[k], 3));
    const auto kernel = kernel_direction(pf.Q);
    const double kernel_angle = std::atan2(kernel[1], kernel[0]);
    const double tangent = std::atan2(-pf.dH.c[0], pf.dH.c[1]);
    const ZeroLines z = real_zero_lines(pf.W, 1e-4);
    c.require(z.count() == 2, "parabolic vertex with " + std::to_string(z.count()) + " lines");
    for (int i = 0; i < z.count(); ++i) {
      const double gap = line_gap(z.angles[i], z.multiplicity[i] == 2 ? kernel_angle : tangent);
      worst = std::max(worst, gap);
      c.require(gap <= kTolAngle, "parabolic line off by " + fmt("%.2e", gap));
    }
  }
  c.require(checked == 50, "only " + std::to_string(checked) + " parabolic vertices");
  if (o.pass)
    o.detail = "100 elliptic, 100 hyperbolic, 50 parabolic; max angle " + fmt("%.2e", worst) + " rad (tol 1e-3)";
  return o;
}

// 5. Closed-form indices against windings, rho sigma, godrons.
Outcome check_index_agreement() {
  Outcome o;
  Criterion c(o);
  std::mt19937 rng(105);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::bernoulli_distribution coin(0.5);
  const std::vector<std::string> fixtures{"lp_hyperbonode", "ot_hyperbonode", "pre_hyperbonode", "pre_ellipnode"};
  std::string counts;
  for (const auto& name : fixtures) {
    int ok = 0;
    for (int attempt = 0; ok < 12 && attempt < 200; ++attempt) {
      std::map<std::string, double> params;
      if (name == "lp_hyperbonode") params = {{"a", u(rng)}, {"b", u(rng)}, {"sign", coin(rng) ? 1.0 : -1.0}};
      if (name == "ot_hyperbonode") params = {{"I", u(rng)}, {"J", u(rng)}, {"sign", coin(rng) ? 1.0 : -1.0}};
      if (name == "pre_hyperbonode")
        params = {{"alpha", u(rng)}, {"u", u(rng)}, {"v", u(rng)}, {"a", u(rng)}, {"b", u(rng)}, {"I", u(rng)}, {"J", u(rng)}};
      if (name == "pre_ellipnode")
        params = {{"alpha", u(rng)}, {"a", u(rng)}, {"b", u(rng)}, {"c", u(rng)}, {"I", u(rng)}, {"J", u(rng)}};
      const bool hyper = name != "pre_ellipnode";
      CharPoint node;
      node.kind = hyper ? CharKind::hyperbonode : CharKind::ellipnode;
      SurfaceSpec spec;
      RhoSigma rs{};
      try {
        spec = catalog(name, params);
        attach_node_index(spec, node);
        if (hyper) rs = invariants_rho_sigma(normalize_hyperbonode_frame(eval_monge_jet(spec, {0, 0.0, 0.0}, 4)));
      } catch (const ValidationError&) {
        continue;
      } catch (const NonGenericError&) {
        continue;
      }
      const Rational w = shrinking_node_winding(spec, hyper ? 1 : 3);
      c.require(w == node.index, name + " winding " + w.to_string() + " vs " + node.index.to_string());
      if (hyper) c.require(node.index == Rational(rs.rho * rs.sigma > 0 ? 1 : -1), name + " sign(rho sigma)");
      ++ok;
    }
    c.require(ok >= 10, name + ": only " + std::to_string(ok) + " generic draws");
    counts += (counts.empty() ? "" : ", ") + name + " " + std::to_string(ok);
  }
  for (double rho : {2.0, 0.5, -1.0, 1.5, 0.8}) {
    const SurfaceSpec spec = catalog("platonova", {{"rho", rho}});
    const GodronSearch gs = find_godrons(trace_parabolic(spec, 64), spec);
    const int want = rho > 1.0 ? 1 : -1;
    c.require(gs.godrons.size() == 1 && gs.godrons[0].sign == want, "godron sign at rho " + fmt("%g", rho));
  }
  for (double rho : {2.0, 0.5}) {
    const SurfaceSpec spec = catalog("platonova", {{"rho", rho}});
    const int sign = rho > 1.0 ? 1 : -1;
    c.require(godron_boundary_index(spec, {0, 0.0, 0.0}, GodronField::cubic_form, 0.02) == Rational(-sign, 3),
              "tau boundary winding at rho " + fmt("%g", rho));
    c.require(godron_boundary_index(spec, {0, 0.0, 0.0}, GodronField::asymptotic, 0.02) == Rational(sign, 2),
              "asymptotic boundary winding at rho " + fmt("%g", rho));
  }
  if (o.pass) o.detail = "draws: " + counts + "; godron signs and boundary windings exact";
  return o;
}

void require_check(Criterion& c, const RegionRecord& r, const std::string& name, std::optional<Rational> lhs = {}) {
  const IdentityCheck* chk = find_check(r, name);
  c.require(chk != nullptr, "region " + std::to_string(r.id) + " lacks '" + name + "'");
  if (!chk) return;
  c.require(chk->pass, "region " + std::to_string(r.id) + ": " + name + " gives " + chk->lhs.to_string() + " vs " +
                           chk->rhs.to_string());
  c.require(chk->lhs.den() == 1 && chk->rhs.den() == 1, name + " not an integer identity");
  if (lhs) c.require(chk->lhs == *lhs, name + " is " + chk->lhs.to_string() + ", expected " + lhs->to_string());
}

// 6. Identities on the perturbed torus.
Outcome check_perturbed_torus() {
  Outcome o;
  Criterion c(o);
  const Analysis& a = analysis("perturbed_torus", kTorus, 128);
  c.require(a.exit_code == exit_pass, "verdict " + a.verification.verdict);
  int e = 0, h = 0;
  for (const auto& r : a.verification.regions) {
    if (r.kind == RegionKind::hyperbolic) {
      require_check(c, r, "sum ind_h = chi");
      require_check(c, r, "sum sign(g) = 2 chi");
      ++h;
    } else {
      require_check(c, r, "#e - #g = 3 chi");
      ++e;
    }
  }
  c.require(e >= 1 && h >= 1, "expected elliptic and hyperbolic regions");
  int global = 0;
  for (const auto& g : a.verification.global)
    if (g.name == "#e + #h = 3 chi(S)") {
      ++global;
      c.require(g.pass && g.lhs == Rational(0) && g.rhs == Rational(0), "#e + #h = 3 chi(S)");
    }
  c.require(global == 1, "global node count identity missing");
  if (o.pass)
    o.detail = std::to_string(a.verification.regions.size()) + " regions, " + std::to_string(a.nodes.size()) +
               " nodes, " + std::to_string(a.godrons.size()) + " godrons; 0 = 3 * 0";
  return o;
}

// 7. Identities on the radial spheres.
Outcome check_radial_sphere() {
  Outcome o;
  Criterion c(o);
  const Analysis& convex = analysis("radial_sphere", kConvex, 128);
  c.require(convex.exit_code == exit_pass, "convex verdict " + convex.verification.verdict);
  int signed_e = 0;
  for (const auto& n : convex.nodes) signed_e += n.kind == CharKind::ellipnode ? n.sign : 0;
  c.require(signed_e == 6 && convex.nodes.size() == 6, "convex sphere: signed ellipnodes " + std::to_string(signed_e));
  for (const auto& g : convex.verification.global)
    if (g.name == "#e + #h = 3 chi(S)") c.require(g.pass && g.lhs == Rational(6), "#e + #h = 6");

  const Analysis& island = analysis("radial_sphere", kIsland, 128);
  c.require(island.exit_code == exit_pass, "island verdict " + island.verification.verdict);
  c.require(island.verification.regions.size() == 2, "island: expected two regions");
  for (const auto& r : island.verification.regions) {
    if (r.kind == RegionKind::hyperbolic) {
      require_check(c, r, "sum ind_h = chi", Rational(1));
      require_check(c, r, "sum sign(g) = 2 chi", Rational(2));
    } else {
      require_check(c, r, "#e - #g = 3 chi", Rational(3));
    }
  }
  if (o.pass) o.detail = "convex: 6 = 3 chi(S2); island: 1 = chi(H), 2 = 2 chi(H), 3 = 3 chi(E)";
  return o;
}

// 8. Boundary and region winding sums.
Outcome check_poincare_hopf() {
  Outcome o;
  Criterion c(o);
  const LineSampler dx = [](const Point2&) { return std::vector<double>{0.0}; };
  Rational total;
  std::string parts;
  for (double side : {1.0, -1.0}) {
    const double eps = 0.05;
    const Point2 centre{0.0, side};
    const double lift = std::asin(eps / 2.0);
    const double th_a = side > 0 ? kPi + lift : lift;
    const double th_b = side > 0 ? 2 * kPi - lift : kPi - lift;
    BoundaryArc arc;
    arc.path = [=](double s) {
      const double th = th_a + s * (th_b - th_a);
      return Point2{centre.s + eps * std::cos(th), centre.t + eps * std::sin(th)};
    };
    const Point2 a = arc.path(0.0), b = arc.path(1.0);
    arc.tangent_a = std::atan2(a.t, a.s) + kPi / 2;
    arc.tangent_b = std::atan2(b.t, b.s) + kPi / 2;
    arc.mode = Trivialization::transverse;
    const Rational r = boundary_winding_index(dx, arc, 1);
    parts += (parts.empty() ? "" : " + ") + r.to_string();
    total += r;
  }
  c.require(total == Rational(1), "disk: " + parts + " = " + total.to_string());

  int sums = 0;
  for (const auto* params : {&kTorus, &kConvex, &kIsland}) {
    const Analysis& a = analysis(params == &kTorus ? "perturbed_torus" : "radial_sphere", *params, 128);
    for (const auto& r : a.verification.regions) {
      for (const char* name : {"winding: sum ind(tau) = chi", "winding: sum ind(asymptotic) = chi"}) {
        const IdentityCheck* chk = find_check(r, name);
        if (!chk) continue;
        ++sums;
        c.require(chk->pass, a.surface_id + " region " + std::to_string(r.id) + ": " + name);
      }
      c.require(find_check(r, "winding: sum ind(tau) = chi") != nullptr,
                a.surface_id + " region " + std::to_string(r.id) + " has no tau winding sum");
    }
  }
  if (o.pass) o.detail = "disk " + parts + " = 1; " + std::to_string(sums) + " region winding sums equal chi";
  return o;
}

// 9. Grid 128 against grid 256.
Outcome check_refinement() {
  Outcome o;
  Criterion c(o);
  const auto same = [&](const std::string& name, const std::map<std::string, double>& params) {
    const Analysis& a = analysis(name, params, 128);
    const Analysis& b = analysis(name, params, 256);
    const std::string tag = name + (params.empty() ? "" : " (variant)");
    c.require(a.exit_code == b.exit_code, tag + ": exit codes differ");
    c.require(a.nodes.size() == b.nodes.size(), tag + ": node counts differ");
    c.require(a.godrons.size() == b.godrons.size(), tag + ": godron counts differ");
    const auto signs = [](const std::vector<CharPoint>& pts) {
      std::map<std::string, int> m;
      for (const auto& p : pts) m[std::string(to_string(p.kind)) + (p.sign > 0 ? "+" : "-")]++;
      return m;
    };
    c.require(signs(a.nodes) == signs(b.nodes), tag + ": node signs differ");
    c.require(signs(a.godrons) == signs(b.godrons), tag + ": godron signs differ");
    const auto regions = [](const Analysis& x) {
      std::vector<std::tuple<int, int, int, int, std::string>> v;
      for (const auto& r : x.verification.regions)
        v.emplace_back(static_cast<int>(r.kind), r.chi, r.signed_nodes, r.signed_godrons, r.index_sum.to_string());
      std::sort(v.begin(), v.end());
      return v;
    };
    c.require(regions(a) == regions(b), tag + ": regions differ");
  };
  same("perturbed_torus", kTorus);
  same("radial_sphere", kConvex);
  same("radial_sphere", kIsland);
  if (o.pass) o.detail = "perturbed torus, convex and island spheres: counts, signs and chi identical";
  return o;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Entry> entries{
      {1, "fundamental cubic form on Platonova jets", 1.0, check_fcf_exactness},
      {2, "leading-order W at a hyperbonode", 1.0, check_hyperbonode_leading_order},
      {3, "lemma suite", 1.0, check_lemma_suite},
      {4, "root counts of W", 10.0, check_root_counts},
      {5, "index agreement", 30.0, check_index_agreement},
      {6, "identities on the perturbed torus", 120.0, check_perturbed_torus},
      {7, "identities on the radial spheres", 120.0, check_radial_sphere},
      {8, "Poincare-Hopf with fractional indices", 60.0, check_poincare_hopf},
      {9, "refinement stability 128 vs 256", 600.0, check_refinement},
  };
  int failed = 0;
  for (const auto& e : entries) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = e.run();
    } catch (const std::exception& ex) {
      o.pass = false;
      o.detail = std::string("exception: ") + ex.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < e.limit_s;
    const bool pass = o.pass && in_time;
    if (!in_time && o.pass) o.detail += "; too slow";
    failed += pass ? 0 : 1;
    std::printf("%s %d %s: %s [%.2f s, limit %.0f s]\n", pass ? "PASS" : "FAIL", e.id, e.name, o.detail.c_str(), secs,
                e.limit_s);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(entries.size()) - failed, entries.size());
  return failed == 0 ? 0 : 1;
}
