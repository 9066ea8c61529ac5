#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "godron/jet.hpp"
#include "godron/vec3.hpp"

namespace godron {

enum class SurfaceKind { monge_patch, parametric_torus, radial_sphere };
enum class DomainKind { rectangle, torus, cube_sphere };

/// A parameter-domain location. chart is always 0 except on the cube-sphere atlas.
struct ChartPoint {
  int chart = 0;
  double s = 0.0;
  double t = 0.0;
};

/// Maps jets of the chart parameters (s, t) to jets of the embedded point.
using JetEvaluator = std::function<std::array<Jet2, 3>(int chart, const Jet2& s, const Jet2& t)>;

/// A monomial c * x^i * y^j of a Monge patch height function.
struct Monomial {
  int i = 0;
  int j = 0;
  double c = 0.0;
};

struct SurfaceSpec {
  std::string name;
  std::map<std::string, double> params;
  SurfaceKind kind = SurfaceKind::monge_patch;
  DomainKind domain = DomainKind::rectangle;
  /// Rectangle bounds; for the torus domain these are [0, 2pi) in both directions;
  /// for the cube-sphere every chart is [-pi/4, pi/4]^2.
  double s_min = -0.5, s_max = 0.5, t_min = -0.5, t_max = 0.5;
  JetEvaluator evaluator;
  /// Height polynomial when kind == monge_patch.
  std::vector<Monomial> polynomial;

  bool closed() const { return domain != DomainKind::rectangle; }
  int chart_count() const { return domain == DomainKind::cube_sphere ? 6 : 1; }
  /// Euler characteristic of the whole domain (rectangle 1, torus 0, sphere 2).
  int euler_characteristic() const;

  /// Brings a point into the fundamental domain: wraps torus periods, and moves
  /// cube-sphere points to the chart whose face contains them.
  ChartPoint canonical(const ChartPoint& p) const;
  bool contains(const ChartPoint& p) const;
  Vec3 position(const ChartPoint& p) const;
  /// Jets of the embedded point at p, expanded in the parameter displacement.
  std::array<Jet2, 3> jets(const ChartPoint& p, int order) const;
};

/// How the tangent coordinates of a MongeJet are chosen.
///   orthonormal: e1 = X_s/|X_s|, e2 = n x e1, heights measured along the unit normal.
///   parametric:  e1 = X_s, e2 = X_t; heights measured along +z for Monge patches
///                (graph convention, so f_ij are plain partial derivatives of the
///                height function) and along the unit normal otherwise.
///   linear:      any linear tangent frame produced by a normalization.
enum class FrameKind { orthonormal, parametric, linear };

struct MongeJet {
  ChartPoint param;
  Vec3 base_point;
  Vec3 e1, e2, n;
  FrameKind frame = FrameKind::orthonormal;
  /// Height over the tangent plane as a function of tangent coordinates (x, y).
  Jet2 f;
  /// Linear change applied by normalization: old = A * new, row major.
  std::array<double, 4> linear_change{1.0, 0.0, 0.0, 1.0};

  double fij(int i, int j) const { return f.derivative(i, j); }
};

/// Monge reduction at a parameter point.
/// Throws DegenerateInputError when the parametrization is not an immersion there.
MongeJet eval_monge_jet(const SurfaceSpec& spec, const ChartPoint& p, int order,
                        FrameKind frame = FrameKind::orthonormal);

/// Frame used for scalar fields (H, Res) during global scans: parametric for
/// patches, orthonormal for closed surfaces.
FrameKind scan_frame(const SurfaceSpec& spec);

/// Applies the linear change of tangent coordinates old = A * new to a Monge jet.
MongeJet change_tangent_frame(const MongeJet& mj, const std::array<double, 4>& a);

/// Axes along the asymptotic directions, f20 = f02 = 0 and f11 > 0.
/// Throws ClassificationError unless the point is hyperbolic.
MongeJet normalize_hyperbonode_frame(const MongeJet& mj);

/// Circular Q = (alpha/2)(x^2 + y^2) and no cubic part.
/// Throws ClassificationError unless elliptic, ValidationError unless a node.
MongeJet normalize_ellipnode_frame(const MongeJet& mj, double node_tolerance = 1e-6);

// Surfaces.

SurfaceSpec monge_patch(std::string name, std::vector<Monomial> polynomial,
                        double half_width = 0.5);
SurfaceSpec torus_of_revolution(double major, double minor);
/// Tube radius modulated by 1 + eps * h(u, v) with a fixed asymmetric harmonic h.
SurfaceSpec perturbed_torus(double major, double minor, double eps);
/// Ovaloid of the cubic surface x^2 + y^2 + z^2 + eps*xyz = 1 in radial form, optionally
/// with a saddle-shaped bump of the given amplitude and width centred on +z.
SurfaceSpec radial_sphere(double eps, double island_amplitude = 0.0, double island_width = 0.3);

/// Named fixtures. Throws ValidationError for unknown names, missing parameters, and
/// parameters violating the genericity condition of the family.
SurfaceSpec catalog(const std::string& name, const std::map<std::string, double>& params);
std::vector<std::string> catalog_names();

}  // namespace godron
