#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "godron/locus.hpp"
#include "godron/topology.hpp"

namespace godron {

struct AnalysisOptions {
  int grid = 128;
  /// Grid for node seeds; 0 uses grid.
  int seed_grid = 0;
  /// Parabolic band excluded from the node search, relative to |Q|^2.
  double tol_parabolic = 1e-6;
  bool windings = true;
  bool flecnodal = true;
};

/// Exit codes shared by the library pipeline and the command-line tool.
enum ExitCode : int { exit_pass = 0, exit_input = 1, exit_identity = 2, exit_degenerate = 3 };

struct Analysis {
  std::string surface_id;
  std::shared_ptr<const SurfaceSpec> spec;
  AnalysisOptions options;
  CurveTrace parabolic;
  CurveTrace flecnodal;
  std::vector<CharPoint> nodes;
  std::vector<CharPoint> godrons;
  std::vector<Region> regions;
  VerificationReport verification;
  /// Degeneracy and resolution warnings gathered along the pipeline.
  std::vector<std::string> warnings;
  int exit_code = exit_pass;
};

/// trace -> nodes and godrons -> indices and windings -> regions -> identities.
/// Resolution failures are reported as identity failures; degeneracies as exit 3.
Analysis analyze(std::shared_ptr<const SurfaceSpec> spec, std::string surface_id, const AnalysisOptions& opts = {});

/// Winding indices of every node (k = 3 elliptic, k = 1 hyperbolic) and both boundary
/// windings of every godron, on parameter circles shrunk until tracking succeeds.
/// Points whose winding cannot be resolved are left without one and reported in warnings.
void attach_windings(const SurfaceSpec& spec, double grid_spacing, std::vector<CharPoint>& nodes,
                     std::vector<CharPoint>& godrons, std::vector<std::string>& warnings);

}  // namespace godron
