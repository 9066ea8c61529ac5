#include "godron/topology.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "godron/error.hpp"

namespace godron {

namespace {

IdentityCheck check(std::string name, const Rational& lhs, const Rational& rhs) {
  return {std::move(name), lhs, rhs, lhs == rhs};
}

}  // namespace

const char* to_string(RegionKind k) { return k == RegionKind::elliptic ? "elliptic" : "hyperbolic"; }

std::vector<Region> decompose_regions(const SurfaceSpec& spec, const CurveTrace& parabolic) {
  if (!spec.closed()) throw UsageError("region decomposition needs a closed surface");
  if (parabolic.kind != CurveKind::parabolic || !parabolic.contour)
    throw UsageError("region decomposition needs a parabolic trace");
  const Contour& contour = *parabolic.contour;
  const DomainMesh& mesh = contour.mesh();

  // A sign pattern that agrees at both ends of an edge but not in its middle means two
  // crossings share the edge: the grid does not resolve the curve. Only edges where H is
  // small at both ends can hide such a pair.
  double hmax = 0.0;
  for (double v : contour.values()) hmax = std::max(hmax, std::abs(v));
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& cell : mesh.cells()) {
    for (int k = 0; k < 4; ++k) {
      const int k2 = (k + 1) % 4;
      const std::size_t a = cell.vid[k], b = cell.vid[k2];
      if (contour.vertex_sign(a) != contour.vertex_sign(b)) continue;
      if (std::max(std::abs(contour.values()[a]), std::abs(contour.values()[b])) > 0.2 * hmax) continue;
      if (!seen.insert({std::min(a, b), std::max(a, b)}).second) continue;
      const ChartPoint mid{cell.chart, 0.5 * (cell.corner[k].s + cell.corner[k2].s),
                           0.5 * (cell.corner[k].t + cell.corner[k2].t)};
      const int mid_sign = hessian_at(spec, mid) >= 0.0 ? 1 : -1;
      if (mid_sign != contour.vertex_sign(a)) {
        throw ResolutionError("parabolic curve crosses a grid edge twice near (chart " + std::to_string(mid.chart) +
                              ", " + std::to_string(mid.s) + ", " + std::to_string(mid.t) + "); refine the grid");
      }
    }
  }

  const SignedComponents comps = signed_components(contour);
  std::vector<Region> regions;
  for (const auto& c : comps.components) {
    Region r;
    r.kind = c.sign > 0 ? RegionKind::elliptic : RegionKind::hyperbolic;
    r.chi = c.chi;
    r.pieces = c.piece_count;
    regions.push_back(std::move(r));
  }
  return regions;
}

void assign_points(std::vector<Region>& regions, const CurveTrace& parabolic, const std::vector<CharPoint>& nodes,
                   const std::vector<CharPoint>& godrons) {
  if (!parabolic.contour) throw UsageError("assign_points needs the contour of the parabolic trace");
  const Contour& contour = *parabolic.contour;
  const SignedComponents comps = signed_components(contour);
  if (comps.components.size() != regions.size()) throw UsageError("regions do not come from this trace");
  for (auto& r : regions) {
    r.interior_nodes.clear();
    r.boundary_godrons.clear();
  }
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
    const CharPoint& n = nodes[i];
    if (n.kind == CharKind::godron) throw UsageError("assign_points: godron in the node list");
    const int sign = n.kind == CharKind::ellipnode ? 1 : -1;
    const int c = component_at(contour, comps, n.param, sign);
    if (c < 0) throw ResolutionError("node is not inside any region of its kind");
    regions[c].interior_nodes.push_back(i);
  }
  for (int i = 0; i < static_cast<int>(godrons.size()); ++i) {
    const CharPoint& g = godrons[i];
    if (g.polyline < 0 || g.segment < 0) throw UsageError("assign_points: godron without a trace location");
    const int seg = parabolic.polylines[g.polyline].segments[g.segment];
    const int crossing = contour.segments()[seg].a;
    for (int sign : {1, -1}) {
      const int c = comps.component_of_crossing(crossing, sign);
      if (c < 0) throw ResolutionError("godron is not on the boundary of a region");
      regions[c].boundary_godrons.push_back(i);
    }
  }
}

VerificationReport verify_global(const SurfaceSpec& spec, const std::vector<Region>& regions,
                                 const std::vector<CharPoint>& nodes, const std::vector<CharPoint>& godrons,
                                 const std::vector<std::string>& degeneracy_warnings) {
  VerificationReport rep;
  rep.chi_surface = spec.euler_characteristic();
  rep.warnings = degeneracy_warnings;
  if (!degeneracy_warnings.empty()) {
    rep.verdict = "non-generic input";
    return rep;
  }
  if (!spec.closed()) {
    rep.verdict = "not applicable";
    rep.warnings.push_back("open patch: the global identities need a closed surface");
    return rep;
  }

  bool ok = true;
  int chi_sum = 0, e_total = 0, h_total = 0;
  for (const auto& n : nodes) (n.kind == CharKind::ellipnode ? e_total : h_total) += n.sign;

  for (int id = 0; id < static_cast<int>(regions.size()); ++id) {
    const Region& r = regions[id];
    RegionRecord rec;
    rec.id = id;
    rec.kind = r.kind;
    rec.chi = r.chi;
    chi_sum += r.chi;
    bool windings = true, asymptotic = true;
    Rational winding_sum, asymptotic_sum, tau_sum;
    for (int i : r.interior_nodes) {
      rec.signed_nodes += nodes[i].sign;
      rec.index_sum += nodes[i].index;
      if (nodes[i].winding) winding_sum += *nodes[i].winding; else windings = false;
    }
    for (int i : r.boundary_godrons) {
      rec.signed_godrons += godrons[i].sign;
      tau_sum += godrons[i].index;
      if (r.kind == RegionKind::elliptic) {
        if (godrons[i].winding) winding_sum += *godrons[i].winding; else windings = false;
      } else {
        if (godrons[i].asymptotic_winding) asymptotic_sum += *godrons[i].asymptotic_winding; else asymptotic = false;
      }
    }
    const Rational chi(r.chi);
    if (r.kind == RegionKind::hyperbolic) {
      rec.checks.push_back(check("sum ind_h = chi", rec.index_sum, chi));
      rec.checks.push_back(check("sum sign(g) = 2 chi", Rational(rec.signed_godrons), Rational(2 * r.chi)));
      if (windings) rec.checks.push_back(check("winding: sum ind(tau) = chi", winding_sum, chi));
      if (asymptotic) rec.checks.push_back(check("winding: sum ind(asymptotic) = chi", asymptotic_sum, chi));
    } else {
      rec.checks.push_back(
          check("#e - #g = 3 chi", Rational(rec.signed_nodes - rec.signed_godrons), Rational(3 * r.chi)));
      rec.checks.push_back(check("sum ind_e + sum ind_g(tau) = chi", rec.index_sum + tau_sum, chi));
      if (windings) rec.checks.push_back(check("winding: sum ind(tau) = chi", winding_sum, chi));
    }
    for (const auto& c : rec.checks) ok = ok && c.pass;
    rep.regions.push_back(std::move(rec));
  }
  rep.global.push_back(check("sum chi = chi(S)", Rational(chi_sum), Rational(rep.chi_surface)));
  rep.global.push_back(check("#e + #h = 3 chi(S)", Rational(e_total + h_total), Rational(3 * rep.chi_surface)));
  for (const auto& c : rep.global) ok = ok && c.pass;
  rep.passed = ok;
  rep.verdict = ok ? "pass" : "fail";
  return rep;
}

}  // namespace godron
