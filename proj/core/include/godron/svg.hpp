#pragma once

#include <string>

#include "godron/analysis.hpp"

namespace godron {

/// Map of the parameter domain: region fills from the parabolic contour, the parabolic
/// (solid) and flecnodal (dashed) traces, and node and godron markers, filled for
/// positive sign and hollow for negative. Cube-sphere charts are laid out 3 x 2.
/// Output is byte-stable: fixed element order and numbers at 6 significant digits.
/// An Analysis without a surface renders the legend alone.
std::string render_svg(const Analysis& analysis);

/// Throws Error when the file cannot be written.
void write_svg(const Analysis& analysis, const std::string& path);

}  // namespace godron
