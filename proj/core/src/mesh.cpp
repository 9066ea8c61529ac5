#include "godron/mesh.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "godron/error.hpp"

namespace godron {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kQuarterPi = std::numbers::pi / 4.0;

std::uint64_t edge_key(std::size_t a, std::size_t b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
}

Point2 lerp(const Point2& a, const Point2& b, double u) { return {a.s + u * (b.s - a.s), a.t + u * (b.t - a.t)}; }

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

bool point_in_polygon(const std::vector<Contour::RingNode>& ring, const Point2& p) {
  bool inside = false;
  for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
    const Point2& a = ring[i].local;
    const Point2& b = ring[j].local;
    if ((a.t > p.t) != (b.t > p.t)) {
      const double s = a.s + (p.t - a.t) * (b.s - a.s) / (b.t - a.t);
      if (p.s < s) inside = !inside;
    }
  }
  return inside;
}

}  // namespace

DomainMesh::DomainMesh(const SurfaceSpec& spec, int resolution) : spec_(&spec), n_(resolution) {
  if (resolution < 2) throw UsageError("mesh resolution must be at least 2");
  const int n = n_;
  switch (spec.domain) {
    case DomainKind::rectangle: {
      const double hs = (spec.s_max - spec.s_min) / n;
      const double ht = (spec.t_max - spec.t_min) / n;
      h_ = std::max(hs, ht);
      vertices_.resize(static_cast<std::size_t>(n + 1) * (n + 1));
      for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) vertices_[i * (n + 1) + j] = {0, spec.s_min + i * hs, spec.t_min + j * ht};
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          Cell c;
          c.i = i;
          c.j = j;
          const int di[4] = {0, 1, 1, 0}, dj[4] = {0, 0, 1, 1};
          for (int k = 0; k < 4; ++k) {
            c.vid[k] = (i + di[k]) * (n + 1) + (j + dj[k]);
            c.corner[k] = {spec.s_min + (i + di[k]) * hs, spec.t_min + (j + dj[k]) * ht};
          }
          cells_.push_back(c);
        }
      }
      break;
    }
    case DomainKind::torus: {
      h_ = kTwoPi / n;
      vertices_.resize(static_cast<std::size_t>(n) * n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) vertices_[i * n + j] = {0, (i + 0.5) * h_, (j + 0.5) * h_};
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          Cell c;
          c.i = i;
          c.j = j;
          const int di[4] = {0, 1, 1, 0}, dj[4] = {0, 0, 1, 1};
          for (int k = 0; k < 4; ++k) {
            c.vid[k] = ((i + di[k]) % n) * n + (j + dj[k]) % n;
            c.corner[k] = {(i + di[k] + 0.5) * h_, (j + dj[k] + 0.5) * h_};
          }
          cells_.push_back(c);
        }
      }
      break;
    }
    case DomainKind::cube_sphere: {
      h_ = 2.0 * kQuarterPi / n;
      std::unordered_map<std::int64_t, std::size_t> ids;
      const std::int64_t base = 2 * n + 1;
      auto vertex_id = [&](int chart, int i, int j) {
        const int k = chart / 2;
        const int sign = chart % 2 == 0 ? 1 : -1;
        const int k1 = (k + 1) % 3, k2 = (k + 2) % 3;
        const int ta = sign > 0 ? k1 : k2;
        const int tb = sign > 0 ? k2 : k1;
        std::int64_t p[3];
        p[k] = static_cast<std::int64_t>(sign) * n;
        p[ta] = 2 * i - n;
        p[tb] = 2 * j - n;
        const std::int64_t key = ((p[0] + n) * base + (p[1] + n)) * base + (p[2] + n);
        auto [it, inserted] = ids.try_emplace(key, vertices_.size());
        if (inserted) vertices_.push_back(spec.canonical({chart, -kQuarterPi + i * h_, -kQuarterPi + j * h_}));
        return it->second;
      };
      for (int chart = 0; chart < 6; ++chart) {
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) {
            Cell c;
            c.chart = chart;
            c.i = i;
            c.j = j;
            const int di[4] = {0, 1, 1, 0}, dj[4] = {0, 0, 1, 1};
            for (int k = 0; k < 4; ++k) {
              c.vid[k] = vertex_id(chart, i + di[k], j + dj[k]);
              c.corner[k] = {-kQuarterPi + (i + di[k]) * h_, -kQuarterPi + (j + dj[k]) * h_};
            }
            cells_.push_back(c);
          }
        }
      }
      break;
    }
  }
  neighbors_.assign(vertices_.size(), {});
  std::unordered_set<std::uint64_t> seen;
  for (const Cell& c : cells_) {
    for (int k = 0; k < 4; ++k) {
      const std::size_t a = c.vid[k], b = c.vid[(k + 1) % 4];
      if (seen.insert(edge_key(a, b)).second) {
        neighbors_[a].push_back(b);
        neighbors_[b].push_back(a);
      }
    }
  }
}

std::size_t DomainMesh::locate(const ChartPoint& p, Point2* local) const {
  const SurfaceSpec& spec = *spec_;
  const int n = n_;
  Point2 loc{p.s, p.t};
  std::size_t index = 0;
  switch (spec.domain) {
    case DomainKind::rectangle: {
      const double hs = (spec.s_max - spec.s_min) / n;
      const double ht = (spec.t_max - spec.t_min) / n;
      const int i = std::clamp(static_cast<int>(std::floor((p.s - spec.s_min) / hs)), 0, n - 1);
      const int j = std::clamp(static_cast<int>(std::floor((p.t - spec.t_min) / ht)), 0, n - 1);
      index = static_cast<std::size_t>(i) * n + j;
      break;
    }
    case DomainKind::torus: {
      const ChartPoint q = spec.canonical(p);
      loc = {q.s, q.t};
      int i = static_cast<int>(std::floor(q.s / h_ - 0.5));
      int j = static_cast<int>(std::floor(q.t / h_ - 0.5));
      if (i < 0) {
        i = n - 1;
        loc.s += kTwoPi;
      }
      if (j < 0) {
        j = n - 1;
        loc.t += kTwoPi;
      }
      i = std::min(i, n - 1);
      j = std::min(j, n - 1);
      index = static_cast<std::size_t>(i) * n + j;
      break;
    }
    case DomainKind::cube_sphere: {
      const ChartPoint q = spec.canonical(p);
      loc = {q.s, q.t};
      const int i = std::clamp(static_cast<int>(std::floor((q.s + kQuarterPi) / h_)), 0, n - 1);
      const int j = std::clamp(static_cast<int>(std::floor((q.t + kQuarterPi) / h_)), 0, n - 1);
      index = static_cast<std::size_t>(q.chart) * n * n + static_cast<std::size_t>(i) * n + j;
      break;
    }
  }
  if (local) *local = loc;
  return index;
}

Contour::Contour(const DomainMesh& mesh, std::vector<double> vertex_values, const ScalarField& field,
                 double lambda_tolerance)
    : mesh_(&mesh), values_(std::move(vertex_values)) {
  if (values_.size() != mesh.vertex_count()) throw UsageError("contour: one value per mesh vertex required");
  const SurfaceSpec& spec = mesh.spec();
  std::unordered_map<std::uint64_t, int> crossing_of_edge;
  cell_pieces_.assign(mesh.cells().size(), {});

  auto crossing_on = [&](const DomainMesh::Cell& cell, int k) -> int {
    const int k2 = (k + 1) % 4;
    const std::size_t va = cell.vid[k], vb = cell.vid[k2];
    const std::uint64_t key = edge_key(va, vb);
    if (auto it = crossing_of_edge.find(key); it != crossing_of_edge.end()) return it->second;
    const bool a_is_lo = va < vb;
    const std::size_t lo = a_is_lo ? va : vb, hi = a_is_lo ? vb : va;
    const Point2 plo = a_is_lo ? cell.corner[k] : cell.corner[k2];
    const Point2 phi = a_is_lo ? cell.corner[k2] : cell.corner[k];
    auto f = [&](double u) {
      const Point2 q = lerp(plo, phi, u);
      return field({cell.chart, q.s, q.t});
    };
    const double flo = values_[lo], fhi = values_[hi];
    double lambda;
    if (flo == 0.0) {
      lambda = 0.0;
    } else {
      boost::uintmax_t iters = 60;
      const auto tol = [lambda_tolerance](double a, double b) { return std::abs(b - a) <= lambda_tolerance; };
      try {
        const auto r = boost::math::tools::toms748_solve(f, 0.0, 1.0, flo, fhi, tol, iters);
        lambda = 0.5 * (r.first + r.second);
      } catch (const std::exception&) {
        lambda = flo / (flo - fhi);
      }
    }
    const Point2 q = lerp(plo, phi, lambda);
    Crossing c;
    c.lo = lo;
    c.hi = hi;
    c.lambda = lambda;
    c.point = spec.canonical({cell.chart, q.s, q.t});
    crossings_.push_back(c);
    const int id = static_cast<int>(crossings_.size()) - 1;
    crossing_of_edge.emplace(key, id);
    return id;
  };

  for (std::size_t ci = 0; ci < mesh.cells().size(); ++ci) {
    const auto& cell = mesh.cells()[ci];
    int sign[4];
    for (int k = 0; k < 4; ++k) sign[k] = vertex_sign(cell.vid[k]);

    // Boundary ring: corner k, then the crossing on edge k -> k+1 if any.
    std::vector<RingNode> ring;
    std::vector<int> ring_corner;  // corner index or -1 for crossings
    for (int k = 0; k < 4; ++k) {
      ring.push_back({false, cell.vid[k], cell.corner[k]});
      ring_corner.push_back(k);
      if (sign[k] != sign[(k + 1) % 4]) {
        const int id = crossing_on(cell, k);
        ring.push_back({true, static_cast<std::size_t>(id), crossing_local(id, ci)});
        ring_corner.push_back(-1);
      }
    }
    std::vector<int> xpos;
    for (std::size_t r = 0; r < ring.size(); ++r)
      if (ring[r].crossing) xpos.push_back(static_cast<int>(r));

    if (xpos.empty()) {
      pieces_.push_back({ci, sign[0], ring});
      cell_pieces_[ci].push_back(static_cast<int>(pieces_.size()) - 1);
      continue;
    }

    const int rn = static_cast<int>(ring.size());
    std::vector<int> partner(rn, -1);
    auto add_chord = [&](int p, int q) {
      partner[p] = q;
      partner[q] = p;
      segments_.push_back({ci, static_cast<int>(ring[p].id), static_cast<int>(ring[q].id)});
    };
    if (xpos.size() == 2) {
      add_chord(xpos[0], xpos[1]);
    } else {
      const Point2 c = lerp(cell.corner[0], cell.corner[2], 0.5);
      const int centre = field({cell.chart, c.s, c.t}) >= 0.0 ? 1 : -1;
      // Corners whose sign differs from the centre are cut off by a chord of their own.
      for (int r = 0; r < rn; ++r) {
        if (ring_corner[r] < 0 || sign[ring_corner[r]] == centre) continue;
        add_chord((r + rn - 1) % rn, (r + 1) % rn);
      }
    }

    for (int s : {1, -1}) {
      std::vector<bool> started(rn, false);
      for (int p : xpos) {
        const int next = (p + 1) % rn;
        if (started[p] || sign[ring_corner[next]] != s) continue;
        Piece piece{ci, s, {}};
        int cur = p;
        do {
          started[cur] = true;
          piece.ring.push_back(ring[cur]);
          int r = (cur + 1) % rn;
          while (!ring[r].crossing) {
            piece.ring.push_back(ring[r]);
            r = (r + 1) % rn;
          }
          piece.ring.push_back(ring[r]);
          cur = partner[r];
        } while (cur != p);
        pieces_.push_back(std::move(piece));
        cell_pieces_[ci].push_back(static_cast<int>(pieces_.size()) - 1);
      }
    }
  }
}

Point2 Contour::crossing_local(int crossing, std::size_t cell_index) const {
  const auto& cell = mesh_->cells()[cell_index];
  const Crossing& c = crossings_[crossing];
  int klo = -1, khi = -1;
  for (int k = 0; k < 4; ++k) {
    if (cell.vid[k] == c.lo) klo = k;
    if (cell.vid[k] == c.hi) khi = k;
  }
  if (klo < 0 || khi < 0) throw UsageError("crossing does not lie on this cell");
  return lerp(cell.corner[klo], cell.corner[khi], c.lambda);
}

ChartPoint Contour::segment_point(int segment, double u) const {
  const Segment& seg = segments_[segment];
  const Point2 a = crossing_local(seg.a, seg.cell);
  const Point2 b = crossing_local(seg.b, seg.cell);
  const Point2 q = lerp(a, b, u);
  return mesh_->spec().canonical({mesh_->cells()[seg.cell].chart, q.s, q.t});
}

std::vector<Contour::Polyline> Contour::polylines() const {
  const int nc = static_cast<int>(crossings_.size());
  std::vector<std::vector<int>> incident(nc);
  for (int s = 0; s < static_cast<int>(segments_.size()); ++s) {
    incident[segments_[s].a].push_back(s);
    incident[segments_[s].b].push_back(s);
  }
  std::vector<bool> used(segments_.size(), false);
  std::vector<Polyline> out;
  auto walk = [&](int start) {
    Polyline pl;
    pl.points.push_back(start);
    int cur = start;
    while (true) {
      int next_seg = -1;
      for (int s : incident[cur])
        if (!used[s]) {
          next_seg = s;
          break;
        }
      if (next_seg < 0) break;
      used[next_seg] = true;
      const int nxt = segments_[next_seg].a == cur ? segments_[next_seg].b : segments_[next_seg].a;
      pl.segments.push_back(next_seg);
      if (nxt == start) {
        pl.closed = true;
        break;
      }
      pl.points.push_back(nxt);
      cur = nxt;
    }
    return pl;
  };
  for (int c = 0; c < nc; ++c)
    if (incident[c].size() == 1 && !used[incident[c][0]]) out.push_back(walk(c));
  for (int c = 0; c < nc; ++c) {
    bool free_seg = false;
    for (int s : incident[c]) free_seg = free_seg || !used[s];
    if (free_seg) out.push_back(walk(c));
  }
  return out;
}

SignedComponents signed_components(const Contour& contour) {
  const DomainMesh& mesh = contour.mesh();
  const std::size_t nv = mesh.vertex_count();
  const std::size_t nc = contour.crossings().size();
  SignedComponents out;
  out.vertex_component.assign(nv, -1);
  out.crossing_component.assign(nc, {-1, -1});
  out.piece_component.assign(contour.pieces().size(), -1);

  for (int s : {1, -1}) {
    UnionFind uf(nv + nc);
    // Elements: vertices of sign s, all crossings; edges: full grid edges, half edges, chords.
    std::vector<std::size_t> edge_owner;
    for (std::size_t v = 0; v < nv; ++v) {
      if (contour.vertex_sign(v) != s) continue;
      for (std::size_t w : mesh.neighbors()[v]) {
        if (w > v && contour.vertex_sign(w) == s) {
          uf.unite(v, w);
          edge_owner.push_back(v);
        }
      }
    }
    for (std::size_t c = 0; c < nc; ++c) {
      const auto& x = contour.crossings()[c];
      const std::size_t v = contour.vertex_sign(x.lo) == s ? x.lo : x.hi;
      uf.unite(v, nv + c);
      edge_owner.push_back(v);
    }
    for (const auto& seg : contour.segments()) {
      uf.unite(nv + seg.a, nv + seg.b);
      edge_owner.push_back(nv + seg.a);
    }

    std::unordered_map<std::size_t, int> comp_of_root;
    auto comp = [&](std::size_t element) {
      const std::size_t r = uf.find(element);
      auto [it, inserted] = comp_of_root.try_emplace(r, static_cast<int>(out.components.size()));
      if (inserted) out.components.push_back({s, 0, 0});
      return it->second;
    };
    for (std::size_t v = 0; v < nv; ++v) {
      if (contour.vertex_sign(v) != s) continue;
      const int c = comp(v);
      out.vertex_component[v] = c;
      out.components[c].chi += 1;
    }
    for (std::size_t c = 0; c < nc; ++c) {
      const int k = comp(nv + c);
      out.crossing_component[c][s > 0 ? 0 : 1] = k;
      out.components[k].chi += 1;
    }
    for (std::size_t e : edge_owner) out.components[comp(e)].chi -= 1;
    for (std::size_t p = 0; p < contour.pieces().size(); ++p) {
      const auto& piece = contour.pieces()[p];
      if (piece.sign != s) continue;
      const auto& node = piece.ring.front();
      const int k = comp(node.crossing ? nv + node.id : node.id);
      out.piece_component[p] = k;
      out.components[k].chi += 1;
      out.components[k].piece_count += 1;
    }
  }
  return out;
}

int component_at(const Contour& contour, const SignedComponents& comps, const ChartPoint& p, int sign) {
  const DomainMesh& mesh = contour.mesh();
  Point2 local;
  const std::size_t cell = mesh.locate(p, &local);
  int best = -1;
  double best_dist = 0.0;
  for (int pi : contour.cell_pieces()[cell]) {
    const auto& piece = contour.pieces()[pi];
    if (piece.sign != sign) continue;
    if (point_in_polygon(piece.ring, local)) return comps.piece_component[pi];
    double d = 1e300;
    for (const auto& node : piece.ring) d = std::min(d, std::hypot(node.local.s - local.s, node.local.t - local.t));
    if (best < 0 || d < best_dist) {
      best = comps.piece_component[pi];
      best_dist = d;
    }
  }
  if (best < 0) {
    throw ResolutionError("no region of the requested sign in the cell containing (" + std::to_string(p.s) + ", " +
                          std::to_string(p.t) + ")");
  }
  return best;
}

}  // namespace godron
