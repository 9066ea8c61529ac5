#include "godron/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "godron/error.hpp"
#include "godron/index.hpp"

namespace godron {

namespace {

double param_distance(const SurfaceSpec& spec, const CharPoint& a, const CharPoint& b) {
  if (a.param.chart != b.param.chart) return norm(a.position - b.position);
  double ds = a.param.s - b.param.s, dt = a.param.t - b.param.t;
  if (spec.domain == DomainKind::torus) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    ds -= two_pi * std::round(ds / two_pi);
    dt -= two_pi * std::round(dt / two_pi);
  }
  return std::hypot(ds, dt);
}

std::string where(const CharPoint& p) {
  return std::string(to_string(p.kind)) + " at (chart " + std::to_string(p.param.chart) + ", " +
         std::to_string(p.param.s) + ", " + std::to_string(p.param.t) + ")";
}

template <class F>
std::optional<Rational> shrink_until_resolved(double r0, F&& f) {
  double r = r0;
  for (int attempt = 0; attempt < 6; ++attempt, r *= 0.5) {
    try {
      return f(r);
    } catch (const Error&) {
    }
  }
  return std::nullopt;
}

}  // namespace

void attach_windings(const SurfaceSpec& spec, double grid_spacing, std::vector<CharPoint>& nodes,
                     std::vector<CharPoint>& godrons, std::vector<std::string>& warnings) {
  std::vector<const CharPoint*> all;
  for (const auto& n : nodes) all.push_back(&n);
  for (const auto& g : godrons) all.push_back(&g);
  auto clearance = [&](const CharPoint& p) {
    double d = std::numeric_limits<double>::infinity();
    for (const CharPoint* q : all)
      if (q != &p) d = std::min(d, param_distance(spec, p, *q));
    return d;
  };

  for (auto& n : nodes) {
    const int k = n.kind == CharKind::ellipnode ? 3 : 1;
    const double r0 = std::min(0.25 * grid_spacing, 0.3 * clearance(n));
    n.winding = shrink_until_resolved(r0, [&](double r) { return node_winding_index(spec, n.param, k, r); });
    if (!n.winding) warnings.push_back("winding index unresolved for " + where(n));
  }
  for (auto& g : godrons) {
    const double r0 = std::min(0.5 * grid_spacing, 0.3 * clearance(g));
    g.winding = shrink_until_resolved(
        r0, [&](double r) { return godron_boundary_index(spec, g.param, GodronField::cubic_form, r); });
    g.asymptotic_winding = shrink_until_resolved(
        r0, [&](double r) { return godron_boundary_index(spec, g.param, GodronField::asymptotic, r); });
    if (!g.winding || !g.asymptotic_winding) warnings.push_back("boundary winding unresolved for " + where(g));
  }
}

Analysis analyze(std::shared_ptr<const SurfaceSpec> spec_ptr, std::string surface_id, const AnalysisOptions& opts) {
  if (!spec_ptr) throw UsageError("analyze: no surface");
  if (opts.grid < 16 || (opts.seed_grid != 0 && opts.seed_grid < 16))
    throw UsageError("grid resolution must be at least 16");
  if (!(opts.tol_parabolic > 0.0)) throw UsageError("parabolic tolerance must be positive");
  const SurfaceSpec& spec = *spec_ptr;
  Analysis a;
  a.surface_id = std::move(surface_id);
  a.spec = spec_ptr;
  a.options = opts;

  std::vector<std::string> degeneracies;
  a.parabolic = trace_parabolic(spec, opts.grid);
  if (a.parabolic.degenerate) degeneracies.push_back("parabolic: " + a.parabolic.degenerate_reason);
  if (opts.flecnodal) {
    a.flecnodal = trace_flecnodal(spec, opts.grid);
    if (a.flecnodal.degenerate) degeneracies.push_back("flecnodal: " + a.flecnodal.degenerate_reason);
  }
  NodeSearchOptions nopts;
  nopts.parabolic_band = opts.tol_parabolic;
  const NodeSearch ns = find_nodes(spec, opts.seed_grid ? opts.seed_grid : opts.grid, nopts);
  a.nodes = ns.nodes;
  if (ns.degenerate) degeneracies.push_back("nodes: " + ns.degenerate_reason);
  if (!a.parabolic.degenerate) {
    const GodronSearch gs = find_godrons(a.parabolic, spec);
    a.godrons = gs.godrons;
    if (gs.degenerate) degeneracies.push_back("godrons: " + gs.degenerate_reason);
  }

  if (!degeneracies.empty()) {
    a.verification = verify_global(spec, {}, a.nodes, a.godrons, degeneracies);
    a.warnings = degeneracies;
    a.exit_code = exit_degenerate;
    return a;
  }

  std::vector<std::string> notes;
  if (opts.windings) attach_windings(spec, a.parabolic.mesh->spacing(), a.nodes, a.godrons, notes);

  if (spec.closed()) {
    try {
      a.regions = decompose_regions(spec, a.parabolic);
      assign_points(a.regions, a.parabolic, a.nodes, a.godrons);
    } catch (const ResolutionError& e) {
      a.verification.verdict = "fail";
      a.verification.chi_surface = spec.euler_characteristic();
      notes.push_back(std::string("resolution: ") + e.what());
      a.verification.warnings = notes;
      a.warnings = notes;
      a.exit_code = exit_identity;
      return a;
    }
  }
  a.verification = verify_global(spec, a.regions, a.nodes, a.godrons);
  for (const auto& n : notes) a.verification.warnings.push_back(n);
  a.warnings = a.verification.warnings;
  a.exit_code = a.verification.verdict == "fail" ? exit_identity : exit_pass;
  return a;
}

}  // namespace godron
