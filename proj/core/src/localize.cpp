#include "godron/localize.hpp"

#include <cmath>
#include <limits>

#include "godron/error.hpp"
#include "godron/index.hpp"

namespace godron {

namespace {

template <class F>
std::optional<Rational> shrinking(double r, F&& f, std::string& note) {
  std::string last;
  for (int attempt = 0; attempt < 6; ++attempt, r *= 0.5) {
    try {
      return f(r);
    } catch (const Error& e) {
      last = e.what();
    }
  }
  note = "winding unresolved: " + last;
  return std::nullopt;
}

}  // namespace

PointReport localize(const SurfaceSpec& spec, const ChartPoint& p0, const LocalizeOptions& opts) {
  if (!spec.contains(p0)) throw UsageError("localize: point outside the parameter domain");
  PointReport r;
  r.param = spec.canonical(p0);
  r.position = spec.position(r.param);
  r.jet = eval_monge_jet(spec, r.param, 4, scan_frame(spec));
  r.forms = fundamental_quantities(r.jet);
  r.point_class = classify_point(r.jet);
  const double qn = r.forms.Q.norm();
  r.node_residual = qn > 0.0 ? r.forms.W.norm() / (qn * qn * qn) : std::numeric_limits<double>::infinity();

  if (r.point_class != PointClass::parabolic) {
    if (r.node_residual > opts.node_tolerance) return r;
    CharPoint node;
    node.kind = r.point_class == PointClass::elliptic ? CharKind::ellipnode : CharKind::hyperbonode;
    node.param = r.param;
    node.position = r.position;
    try {
      attach_node_index(spec, node);
    } catch (const Error& e) {
      r.note = e.what();
      return r;
    }
    const int k = node.kind == CharKind::ellipnode ? 3 : 1;
    node.winding = shrinking(opts.radius, [&](double rad) { return node_winding_index(spec, r.param, k, rad); }, r.note);
    r.feature = node;
    return r;
  }

  const auto v = kernel_direction(r.forms.Q);
  const double g = r.forms.dH(v[0], v[1]);
  if (!(std::abs(g) <= opts.godron_tolerance * r.forms.dH.norm())) return r;
  // Sign and Platonova ratio come from the traced curve: pick the godron found there
  // nearest to the point.
  const CurveTrace trace = trace_parabolic(spec, opts.trace_grid);
  const GodronSearch gs = find_godrons(trace, spec);
  const CharPoint* best = nullptr;
  double best_d = std::numeric_limits<double>::infinity();
  for (const auto& c : gs.godrons) {
    const double d = norm(c.position - r.position);
    if (d < best_d) best_d = d, best = &c;
  }
  if (!best || best_d > 2.0 * trace.mesh->spacing() * (1.0 + norm(r.position))) {
    r.note = "no godron of the traced parabolic curve near this point";
    return r;
  }
  CharPoint gp = *best;
  gp.param = r.param;
  gp.position = r.position;
  gp.winding = shrinking(
      opts.radius, [&](double rad) { return godron_boundary_index(spec, r.param, GodronField::cubic_form, rad); },
      r.note);
  gp.asymptotic_winding = shrinking(
      opts.radius, [&](double rad) { return godron_boundary_index(spec, r.param, GodronField::asymptotic, rad); },
      r.note);
  r.feature = gp;
  return r;
}

}  // namespace godron
