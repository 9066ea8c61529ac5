#pragma once

#include <optional>
#include <string>
#include <vector>

#include "godron/locus.hpp"
#include "godron/rational.hpp"

namespace godron {

enum class RegionKind { elliptic, hyperbolic };
const char* to_string(RegionKind k);

/// A connected component of the closed elliptic domain {H >= 0} or hyperbolic domain {H <= 0}.
struct Region {
  RegionKind kind = RegionKind::elliptic;
  int chi = 0;
  /// Cell pieces of the cut grid making up the region.
  std::size_t pieces = 0;
  /// Indices into the node and godron lists handed to assign_points.
  std::vector<int> interior_nodes;
  std::vector<int> boundary_godrons;
};

/// Regions of a closed surface cut along the parabolic trace, with chi = V - E + F of
/// each closed region. Throws UsageError for open patches and ResolutionError when some
/// grid edge hides a pair of crossings (the grid does not resolve the curve).
std::vector<Region> decompose_regions(const SurfaceSpec& spec, const CurveTrace& parabolic);

/// Attaches each node to the region of its kind containing it and each godron to the two
/// regions whose boundary it lies on.
void assign_points(std::vector<Region>& regions, const CurveTrace& parabolic, const std::vector<CharPoint>& nodes,
                   const std::vector<CharPoint>& godrons);

struct IdentityCheck {
  std::string name;
  Rational lhs;
  Rational rhs;
  bool pass = false;
};

struct RegionRecord {
  int id = 0;
  RegionKind kind = RegionKind::elliptic;
  int chi = 0;
  /// Signed counts: sum of node signs and of godron signs on the boundary.
  int signed_nodes = 0;
  int signed_godrons = 0;
  Rational index_sum;
  std::vector<IdentityCheck> checks;
};

struct VerificationReport {
  /// "pass", "fail", "non-generic input" or "not applicable".
  std::string verdict;
  bool passed = false;
  int chi_surface = 0;
  std::vector<RegionRecord> regions;
  std::vector<IdentityCheck> global;
  std::vector<std::string> warnings;
};

/// Count identities per region (sum ind_h = chi, sum sign(g) = 2 chi, #e - #g = 3 chi),
/// #e + #h = 3 chi(S) and chi additivity globally, and, when every point carries a winding
/// index, the Poincare-Hopf sums per region. All exact.
/// Any degeneracy warning skips the checks with the verdict "non-generic input".
VerificationReport verify_global(const SurfaceSpec& spec, const std::vector<Region>& regions,
                                 const std::vector<CharPoint>& nodes, const std::vector<CharPoint>& godrons,
                                 const std::vector<std::string>& degeneracy_warnings = {});

}  // namespace godron
