#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "godron/surface.hpp"

namespace godron {

struct Point2 {
  double s = 0.0;
  double t = 0.0;
};

/// Quadrilateral grid over the parameter domain with globally unique vertex ids:
/// periodic identifications on the torus and shared face edges on the cube-sphere
/// atlas resolve to the same id.
///
/// Torus vertices sit at half-cell offsets, (i + 1/2) * 2pi / N, so rows such as
/// v = +-pi/2 never land on the grid.
class DomainMesh {
 public:
  struct Cell {
    int chart = 0;
    int i = 0;
    int j = 0;
    /// Counterclockwise corners (i,j), (i+1,j), (i+1,j+1), (i,j+1).
    std::array<std::size_t, 4> vid{};
    /// Corner coordinates in the cell's chart, not wrapped.
    std::array<Point2, 4> corner{};
  };

  DomainMesh(const SurfaceSpec& spec, int resolution);

  const SurfaceSpec& spec() const { return *spec_; }
  int resolution() const { return n_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  const ChartPoint& vertex(std::size_t vid) const { return vertices_[vid]; }
  const std::vector<Cell>& cells() const { return cells_; }
  /// Vertices sharing a grid edge with each vertex.
  const std::vector<std::vector<std::size_t>>& neighbors() const { return neighbors_; }
  /// Cell containing a point, with the point in that cell's local coordinates.
  std::size_t locate(const ChartPoint& p, Point2* local = nullptr) const;
  /// Grid spacing in parameter units.
  double spacing() const { return h_; }

 private:
  const SurfaceSpec* spec_;
  int n_;
  double h_;
  std::vector<ChartPoint> vertices_;
  std::vector<Cell> cells_;
  std::vector<std::vector<std::size_t>> neighbors_;
};

using ScalarField = std::function<double(const ChartPoint&)>;

/// Zero set of a scalar field on a DomainMesh by marching squares.
///
/// A vertex value of exactly 0 counts as positive. Crossings are refined by bracketed
/// root finding along their edge; saddle cells are resolved by the value at the cell centre.
class Contour {
 public:
  struct Crossing {
    std::size_t lo = 0;  // lower vertex id of the edge
    std::size_t hi = 0;
    double lambda = 0.0;  // position from lo towards hi
    ChartPoint point;     // canonical location
  };
  struct Segment {
    std::size_t cell = 0;
    int a = 0;  // crossing ids
    int b = 0;
  };
  /// One node of a piece boundary: a grid vertex or a crossing.
  struct RingNode {
    bool crossing = false;
    std::size_t id = 0;
    Point2 local;
  };
  /// Polygon of one sign inside one cell, bounded by cell edges and chords.
  struct Piece {
    std::size_t cell = 0;
    int sign = 1;
    std::vector<RingNode> ring;
  };
  struct Polyline {
    std::vector<int> points;
    /// segments[k] joins points[k] and points[k + 1] (and last to first when closed).
    std::vector<int> segments;
    bool closed = false;
  };

  Contour(const DomainMesh& mesh, std::vector<double> vertex_values, const ScalarField& field,
          double lambda_tolerance = 1e-13);

  const DomainMesh& mesh() const { return *mesh_; }
  const std::vector<double>& values() const { return values_; }
  int vertex_sign(std::size_t vid) const { return values_[vid] >= 0.0 ? 1 : -1; }
  const std::vector<Crossing>& crossings() const { return crossings_; }
  const std::vector<Segment>& segments() const { return segments_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  const std::vector<std::vector<int>>& cell_pieces() const { return cell_pieces_; }
  std::vector<Polyline> polylines() const;
  /// Local coordinates of a crossing in the chart of the given cell.
  Point2 crossing_local(int crossing, std::size_t cell) const;
  /// Chart point on a segment at fraction u from its first crossing.
  ChartPoint segment_point(int segment, double u) const;

 private:
  const DomainMesh* mesh_;
  std::vector<double> values_;
  std::vector<Crossing> crossings_;
  std::vector<Segment> segments_;
  std::vector<Piece> pieces_;
  std::vector<std::vector<int>> cell_pieces_;
};

/// Connected components of the closed regions {sign * F >= 0}, with their Euler
/// characteristic counted from the cell complex cut along the contour.
struct SignedComponents {
  struct Component {
    int sign = 1;
    int chi = 0;
    std::size_t piece_count = 0;
  };
  std::vector<Component> components;
  /// Component of each grid vertex for its own sign (-1 is never used: every vertex has a sign).
  std::vector<int> vertex_component;
  /// Component of each crossing on the positive and negative side.
  std::vector<std::array<int, 2>> crossing_component;
  /// Component of each piece.
  std::vector<int> piece_component;

  int component_of_crossing(int crossing, int sign) const {
    return crossing_component[crossing][sign > 0 ? 0 : 1];
  }
};

SignedComponents signed_components(const Contour& contour);

/// Component containing a point of the given sign.
int component_at(const Contour& contour, const SignedComponents& comps, const ChartPoint& p, int sign);

}  // namespace godron
