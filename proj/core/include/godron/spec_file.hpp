#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "godron/surface.hpp"

namespace godron {

/// A surface named on the command line or in a spec file, plus any analysis settings the
/// file carries.
struct SurfaceSource {
  /// Canonical "catalog:name,key=value,..." or "monge_patch:name".
  std::string id;
  SurfaceSpec spec;
  std::optional<int> grid;
  std::optional<int> seed_grid;
  std::optional<double> tol_parabolic;
};

/// Parses a JSON spec document:
///
///   { "surface": { "catalog": "platonova", "params": { "rho": 2 } },
///     "analysis": { "grid": 128, "seed_grid": 64, "tol_parabolic": 1e-6 } }
///
/// or, for a polynomial height function z = sum c x^i y^j,
///
///   { "surface": { "monge_patch": { "name": "cusp", "half_width": 0.5,
///                                   "monomials": [ [2, 0, 0.5], [0, 3, 1.0] ] } } }
///
/// Throws ValidationError on malformed documents and invalid parameters.
SurfaceSource parse_spec_text(const std::string& text);
SurfaceSource load_spec_file(const std::string& path);

/// "catalog:NAME" with parameters as ",k=v" suffixes and/or extra "k=v" tokens. A bare
/// "+" or "-" token sets sign; rho, eps and alpha may be spelled with Greek letters.
/// Anything not starting with "catalog:" is read as a spec file path.
SurfaceSource resolve_surface(const std::string& argument, const std::vector<std::string>& extra = {});

}  // namespace godron
