#pragma once

#include <optional>
#include <string>

#include "godron/forms.hpp"
#include "godron/locus.hpp"

namespace godron {

struct LocalizeOptions {
  /// A point is a node candidate when |W| <= node_tolerance |Q|^3.
  double node_tolerance = 1e-8;
  /// A parabolic point is a godron candidate when |dH(kernel)| <= godron_tolerance |dH|.
  double godron_tolerance = 1e-8;
  /// Starting radius of the winding loops; halved up to five times when tracking fails.
  double radius = 0.02;
  /// Grid of the parabolic trace used to sign a godron.
  int trace_grid = 64;
};

/// Everything computable at a single point: the jet in scan_frame(spec), the forms,
/// the class of the point, and for a node or godron the closed-form and winding indices.
struct PointReport {
  ChartPoint param;
  Vec3 position;
  MongeJet jet;
  PointForms forms;
  PointClass point_class = PointClass::elliptic;
  /// |W| / |Q|^3, the scale-free node residual.
  double node_residual = 0.0;
  std::optional<CharPoint> feature;
  /// Why no index could be attached to a candidate, if so.
  std::string note;
};

PointReport localize(const SurfaceSpec& spec, const ChartPoint& p, const LocalizeOptions& opts = {});

}  // namespace godron
