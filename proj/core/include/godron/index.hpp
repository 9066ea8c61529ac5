#pragma once

#include <functional>
#include <vector>

#include "godron/forms.hpp"
#include "godron/mesh.hpp"
#include "godron/rational.hpp"
#include "godron/surface.hpp"

namespace godron {

// Closed-form indices. The Monge jets must already be normalized.

/// sign(4 f11^2 f40 f04 - (2 f11 f31 - 3 f21^2)(2 f11 f13 - 3 f12^2)) in a frame with
/// asymptotic axes. Throws NonGenericError when the argument vanishes.
int hyperbonode_index(const MongeJet& normalized, double rel_tol = 1e-9);

/// The same index for a frame whose asymptotic lines are the diagonals y = +-x and whose
/// cubic part is absent: sign((f40 + 3f22)(f04 + 3f22) - (f31 + 3f13)(f13 + 3f31)).
int hyperbonode_index_diagonal(const MongeJet& mj, double rel_tol = 1e-9);

/// (1/3) sign((f31 - 3f13)(f13 - 3f31) - (f40 - 3f22)(f04 - 3f22)) in a frame with circular Q
/// and no cubic part. Throws NonGenericError when the argument vanishes.
Rational ellipnode_index(const MongeJet& normalized, double rel_tol = 1e-9);

struct RhoSigma {
  double rho = 0.0;
  int sigma = 0;
};

/// Cross-ratio invariant and parity of a hyperbonode in an asymptotic frame.
/// Throws NonGenericError when f40 f04 = 0.
RhoSigma invariants_rho_sigma(const MongeJet& normalized);

/// Index of the fundamental-cubic line field at a godron of the given sign: -sign/3.
Rational godron_tau_index(int sign);
/// Index of the asymptotic line field at a godron, as a boundary point of the hyperbolic side: sign/2.
Rational godron_asymptotic_index(int sign);

// Numeric winding of k-valued line fields.

/// Returns the line angles (mod pi, any order) of a field at a point of the plane.
using LineSampler = std::function<std::vector<double>(const Point2&)>;
/// A path in the plane parametrized over [0, 1].
using PlanePath = std::function<Point2(double)>;

/// The form whose real zero lines make up a field, e.g. W for the cubic-form field.
using FormSampler = std::function<BinaryForm(const Point2&)>;

struct WindingOptions {
  int initial_samples = 64;
  int max_samples = 1 << 16;
  /// Accepted distance of the accumulated rotation from a multiple of pi, in units of pi.
  double snap_tolerance = 1e-3;
  /// When set, steps are also halved until the form, normalized and up to sign, turns by
  /// at most max_form_turn radians. Near a degenerate node a line can sweep a half-turn
  /// within a tiny arc, which unoriented line angles alone cannot detect.
  FormSampler form;
  double max_form_turn = 0.05;
};

/// Fractional index of a k-valued line field around a closed loop. Each line is tracked
/// continuously; after q traversals a tracked line returns to itself having turned by m
/// half-turns, and the index is m / (2q).
/// Throws ResolutionError if tracking fails or the result is off the (1/2k) lattice.
Rational winding_index(const LineSampler& field, const PlanePath& loop, int k, const WindingOptions& opts = {});

/// How the field sits relative to the boundary at the arc endpoints.
///   transverse:     no line is tangent to the boundary.
///   tangent_branch: exactly one line is tangent to the boundary.
enum class Trivialization { transverse, tangent_branch };

struct BoundaryArc {
  /// Path from A (u = 0) to B (u = 1), turning counterclockwise around the boundary point.
  PlanePath path;
  /// Angles of the boundary tangent lines at A and B.
  double tangent_a = 0.0;
  double tangent_b = 0.0;
  Trivialization mode = Trivialization::transverse;
};

/// Fractional index of a boundary singular point: the arc is closed up by identifying
/// the tangent planes at A and B so that the boundary tangents correspond.
Rational boundary_winding_index(const LineSampler& field, const BoundaryArc& arc, int k,
                                const WindingOptions& opts = {});

// Line fields on surfaces, in chart parameter coordinates.

/// Real zero lines of W = 4HC - Q dH.
LineSampler cubic_form_lines(const SurfaceSpec& spec, int chart);
/// W itself, in the same parametric frame.
FormSampler cubic_form(const SurfaceSpec& spec, int chart);
/// Real zero lines of Q (the asymptotic directions).
LineSampler asymptotic_lines(const SurfaceSpec& spec, int chart);
/// Q itself, in the same parametric frame.
FormSampler quadratic_form(const SurfaceSpec& spec, int chart);

PlanePath circle_path(const Point2& centre, double radius);

/// Winding index of the zero lines of W on a small parameter circle around a point.
Rational node_winding_index(const SurfaceSpec& spec, const ChartPoint& p, int k, double radius);

enum class GodronField { cubic_form, asymptotic };

/// Boundary index at a godron: the cubic-form field (k = 3) on the elliptic side, or the
/// asymptotic field (k = 2) on the hyperbolic side, along an arc of the given radius.
Rational godron_boundary_index(const SurfaceSpec& spec, const ChartPoint& godron, GodronField field, double radius);

}  // namespace godron
