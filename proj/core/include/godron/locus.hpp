#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "godron/forms.hpp"
#include "godron/mesh.hpp"
#include "godron/rational.hpp"
#include "godron/surface.hpp"

namespace godron {

enum class PointClass { elliptic, hyperbolic, parabolic };

/// Sign of H0 with the scale-aware parabolic band |H0| <= rel_tol |Q|^2.
PointClass classify_point(const MongeJet& mj, double rel_tol = 1e-9);
const char* to_string(PointClass c);

/// Scalar fields sampled during scans, in scan_frame(spec).
double hessian_at(const SurfaceSpec& spec, const ChartPoint& p);
double flecnodal_resultant_at(const SurfaceSpec& spec, const ChartPoint& p);

enum class CurveKind { parabolic, flecnodal };

struct TracePolyline {
  std::vector<ChartPoint> points;
  /// Contour segment between points[k] and points[k + 1] (wrapping when closed).
  std::vector<int> segments;
  bool closed = false;
};

struct CurveTrace {
  CurveKind kind = CurveKind::parabolic;
  std::vector<TracePolyline> polylines;
  /// Bound on |defining function| at the refined vertices, relative to its grid maximum.
  double tolerance = 0.0;
  bool degenerate = false;
  std::string degenerate_reason;
  /// Grid and contour the trace was cut from. The mesh refers to the SurfaceSpec,
  /// which must outlive the trace. Flecnodal traces have no contour and no segments.
  std::shared_ptr<const DomainMesh> mesh;
  std::shared_ptr<const Contour> contour;
};

/// Zero set of H0, with one polyline per connected arc, glued across charts and periods.
CurveTrace trace_parabolic(const SurfaceSpec& spec, int grid);

/// Zero set of Res(Q, C) inside the closed hyperbolic domain, traced as the zeros of C on
/// each asymptotic line separately (the two factors of the resultant). Flagged degenerate
/// when the resultant vanishes on more than 10% of hyperbolic samples (every point flecnodal).
CurveTrace trace_flecnodal(const SurfaceSpec& spec, int grid);

enum class CharKind { ellipnode, hyperbonode, godron };
const char* to_string(CharKind k);

struct CharPoint {
  CharKind kind = CharKind::ellipnode;
  ChartPoint param;
  Vec3 position;
  int sign = 1;
  /// Closed-form index: +-1 for hyperbonodes, +-1/3 for ellipnodes, the tau index -sign/3 for godrons.
  Rational index;
  std::optional<double> rho;
  std::optional<int> sigma;
  /// Godrons: f02 f40 / (3 f21^2) in a frame whose x axis is the kernel of Q.
  std::optional<double> rho_platonova;
  /// Winding-based index, when computed.
  std::optional<Rational> winding;
  /// Godrons: boundary winding of the asymptotic field on the hyperbolic side.
  std::optional<Rational> asymptotic_winding;
  /// Godrons: polyline of the parabolic trace and contour segment they lie on.
  int polyline = -1;
  int segment = -1;
};

/// Sets sign, the closed-form index and (hyperbonodes) rho and sigma of a node whose kind
/// and param are already set, from the normalized order-4 jet.
/// Throws NonGenericError when the index argument vanishes.
void attach_node_index(const SurfaceSpec& spec, CharPoint& node);

struct NodeSearchOptions {
  /// Points with |H0| <= parabolic_band |Q|^2 are excluded from the search.
  double parabolic_band = 1e-6;
  int max_newton_iterations = 40;
  /// Newton residual tolerance on W relative to |Q|^3.
  double residual_tolerance = 1e-10;
  /// |det J| / |J|_F^2 below this marks a non-isolated root.
  double isolation_tolerance = 1e-6;
  double dedup_distance = 1e-6;
};

struct NodeSearch {
  std::vector<CharPoint> nodes;
  bool degenerate = false;
  std::string degenerate_reason;
  std::size_t seeds = 0;
  std::size_t discarded = 0;
};

/// Roots of the U- projection of C, seeded from grid minima of |W| / |Q|^3 and refined by
/// Newton. Each root is classified and carries its closed-form index (and rho, sigma
/// for hyperbonodes). Flags the surface degenerate when W- vanishes on more than 10% of
/// the samples or a root is not isolated.
NodeSearch find_nodes(const SurfaceSpec& spec, int grid, const NodeSearchOptions& opts = {});

struct GodronSearch {
  std::vector<CharPoint> godrons;
  bool degenerate = false;
  std::string degenerate_reason;
};

/// Zeros of g = dH(v), v the kernel direction of Q, along each parabolic polyline.
/// Each godron is signed with godron_sign. A polyline on which g vanishes identically
/// marks the search degenerate.
GodronSearch find_godrons(const CurveTrace& parabolic, const SurfaceSpec& spec, int sample_offset = 5);

/// +1 when the asymptotic half-lines at nearby parabolic points, directed to the hyperbolic
/// side, point towards the godron; -1 when they point away. Samples sample_offset polyline
/// vertices on each side. Throws NonGenericError when the two sides disagree.
int godron_sign(const CharPoint& g, const SurfaceSpec& spec, const CurveTrace& parabolic, int sample_offset = 5);

}  // namespace godron
