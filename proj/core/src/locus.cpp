#include "godron/locus.hpp"

#include <Eigen/Dense>
#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "godron/error.hpp"
#include "godron/index.hpp"

namespace godron {

namespace {

MongeJet scan_jet(const SurfaceSpec& spec, const ChartPoint& p, int order) {
  return eval_monge_jet(spec, p, order, scan_frame(spec));
}

Vec3 tangent_vector(const MongeJet& mj, const std::array<double, 2>& v) { return v[0] * mj.e1 + v[1] * mj.e2; }

bool point_less(const ChartPoint& a, const ChartPoint& b) {
  if (a.chart != b.chart) return a.chart < b.chart;
  if (a.s != b.s) return a.s < b.s;
  return a.t < b.t;
}

std::string describe(const ChartPoint& p) {
  std::ostringstream os;
  os << "(chart " << p.chart << ", " << p.s << ", " << p.t << ")";
  return os.str();
}

// Point on polyline edge k at fraction u from points[k] towards points[k + 1].
ChartPoint polyline_point(const Contour& contour, const Contour::Polyline& pl, int k, double u) {
  const auto& seg = contour.segments()[pl.segments[k]];
  return contour.segment_point(pl.segments[k], seg.a == pl.points[k] ? u : 1.0 - u);
}

// Kernel direction of Q and its 3D image at a point.
struct KernelSample {
  MongeJet mj;
  PointForms forms;
  std::array<double, 2> v{};
  Vec3 v3;
  double g = 0.0;
};

KernelSample kernel_sample(const SurfaceSpec& spec, const ChartPoint& p) {
  KernelSample k;
  k.mj = scan_jet(spec, p, 3);
  k.forms = fundamental_quantities(k.mj);
  k.v = kernel_direction(k.forms.Q);
  k.v3 = tangent_vector(k.mj, k.v);
  k.g = k.forms.dH(k.v[0], k.v[1]);
  return k;
}

// g with the kernel orientation matched to a reference tangent vector.
double oriented_g(const SurfaceSpec& spec, const ChartPoint& p, const Vec3& reference) {
  const KernelSample k = kernel_sample(spec, p);
  return dot(k.v3, reference) < 0.0 ? -k.g : k.g;
}

double mesh_param_scale(const DomainMesh& mesh) { return mesh.spacing(); }

// Free coordinates of U-: the two cubic coefficients complementary to the best-conditioned
// pair of columns of the constraint matrix of lambda_op(Q, .).
std::array<int, 2> free_pair(const BinaryForm& q) {
  const double a = q.c[0], b = 0.5 * q.c[1], c = q.c[2];
  const double m[2][4] = {{6 * c, -4 * b, 2 * a, 0.0}, {0.0, 2 * c, -4 * b, 6 * a}};
  double best = -1.0;
  std::array<int, 2> fixed{0, 1};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      const double d = std::abs(m[0][i] * m[1][j] - m[0][j] * m[1][i]);
      if (d > best) {
        best = d;
        fixed = {i, j};
      }
    }
  std::array<int, 2> out{};
  int n = 0;
  for (int i = 0; i < 4; ++i)
    if (i != fixed[0] && i != fixed[1]) out[n++] = i;
  return out;
}

// W = 4 H0 W- lies in U- and shares the zeros of W- off the parabolic set, but stays
// bounded near it, so it is the Newton residual.
struct NodeResidual {
  BinaryForm q;
  BinaryForm w;
  double h0 = 0.0;
};

NodeResidual node_residual(const SurfaceSpec& spec, const ChartPoint& p) {
  const MongeJet mj = scan_jet(spec, p, 3);
  const PointForms pf = fundamental_quantities(mj);
  return {pf.Q, pf.W, pf.H0};
}

}  // namespace

void attach_node_index(const SurfaceSpec& spec, CharPoint& node) {
  const MongeJet mj = eval_monge_jet(spec, node.param, 4);
  if (node.kind == CharKind::hyperbonode) {
    const MongeJet nj = normalize_hyperbonode_frame(mj);
    node.sign = hyperbonode_index(nj);
    node.index = Rational(node.sign);
    try {
      const RhoSigma rs = invariants_rho_sigma(nj);
      node.rho = rs.rho;
      node.sigma = rs.sigma;
    } catch (const NonGenericError&) {
    }
  } else {
    const MongeJet nj = normalize_ellipnode_frame(mj);
    node.index = ellipnode_index(nj);
    node.sign = node.index.sign();
  }
}

PointClass classify_point(const MongeJet& mj, double rel_tol) {
  const BinaryForm q = quadratic_part(mj.f);
  if (is_parabolic(q, rel_tol)) return PointClass::parabolic;
  return hessian_of(q) > 0.0 ? PointClass::elliptic : PointClass::hyperbolic;
}

const char* to_string(PointClass c) {
  switch (c) {
    case PointClass::elliptic: return "elliptic";
    case PointClass::hyperbolic: return "hyperbolic";
    case PointClass::parabolic: return "parabolic";
  }
  return "?";
}

const char* to_string(CharKind k) {
  switch (k) {
    case CharKind::ellipnode: return "ellipnode";
    case CharKind::hyperbonode: return "hyperbonode";
    case CharKind::godron: return "godron";
  }
  return "?";
}

double hessian_at(const SurfaceSpec& spec, const ChartPoint& p) {
  const MongeJet mj = scan_jet(spec, p, 2);
  return mj.fij(2, 0) * mj.fij(0, 2) - mj.fij(1, 1) * mj.fij(1, 1);
}

double flecnodal_resultant_at(const SurfaceSpec& spec, const ChartPoint& p) {
  const MongeJet mj = scan_jet(spec, p, 3);
  return resultant(quadratic_part(mj.f), cubic_part(mj.f));
}

CurveTrace trace_parabolic(const SurfaceSpec& spec, int grid) {
  if (grid < 16) throw UsageError("grid resolution must be at least 16");
  CurveTrace trace;
  trace.kind = CurveKind::parabolic;
  auto mesh = std::make_shared<DomainMesh>(spec, grid);
  const ScalarField field = [&spec](const ChartPoint& p) { return hessian_at(spec, p); };
  std::vector<double> values(mesh->vertex_count());
  double hmax = 0.0, qmax = 0.0;
  for (std::size_t v = 0; v < values.size(); ++v) {
    const MongeJet mj = scan_jet(spec, mesh->vertex(v), 2);
    const BinaryForm q = quadratic_part(mj.f);
    values[v] = hessian_of(q);
    hmax = std::max(hmax, std::abs(values[v]));
    qmax = std::max(qmax, q.norm());
  }
  if (hmax <= 1e-12 * qmax * qmax) {
    trace.degenerate = true;
    trace.degenerate_reason = "H vanishes identically: every point is parabolic";
  }
  auto contour = std::make_shared<Contour>(*mesh, std::move(values), field);
  double worst = 0.0;
  for (const auto& pl : contour->polylines()) {
    TracePolyline tp;
    tp.closed = pl.closed;
    tp.segments = pl.segments;
    for (int c : pl.points) {
      tp.points.push_back(contour->crossings()[c].point);
      worst = std::max(worst, std::abs(hessian_at(spec, tp.points.back())));
    }
    trace.polylines.push_back(std::move(tp));
  }
  trace.tolerance = hmax > 0.0 ? worst / hmax : 0.0;
  trace.mesh = std::move(mesh);
  trace.contour = std::move(contour);
  return trace;
}

namespace {

// The two asymptotic lines at a point, as tangent vectors of arbitrary orientation with
// C evaluated on them. Branch 0 is the line from which a counterclockwise turn enters
// {Q > 0}, branch 1 the other. Off the open hyperbolic domain both branches fall back to
// the direction of least |Q|, which is where the two lines merge on the parabolic curve.
struct BranchSample {
  std::array<Vec3, 2> v3;
  std::array<double, 2> c{};
  double res = 0.0;
  double res_scale = 0.0;
  bool hyperbolic = false;
  bool closed_hyperbolic = false;
};

BranchSample branch_sample(const SurfaceSpec& spec, const ChartPoint& p) {
  const MongeJet mj = scan_jet(spec, p, 3);
  const BinaryForm q = quadratic_part(mj.f), c = cubic_part(mj.f);
  BranchSample b;
  const double h = hessian_of(q), qn = q.norm();
  b.res = resultant(q, c);
  b.res_scale = qn * qn * qn * std::max(qn, c.norm()) * std::max(qn, c.norm());
  b.hyperbolic = !is_parabolic(q, 1e-6) && h < 0.0;
  b.closed_hyperbolic = h <= 1e-9 * qn * qn;
  std::array<std::array<double, 2>, 2> v{};
  const ZeroLines z = h < 0.0 ? real_zero_lines(q) : ZeroLines{};
  if (z.count() == 2) {
    for (double t : z.angles) {
      const double turn = (q.c[2] - q.c[0]) * std::sin(2.0 * t) + q.c[1] * std::cos(2.0 * t);
      v[turn > 0.0 ? 0 : 1] = {std::cos(t), std::sin(t)};
    }
  } else {
    Eigen::Matrix2d m;
    m << q.c[0], 0.5 * q.c[1], 0.5 * q.c[1], q.c[2];
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(m);
    const int k = std::abs(es.eigenvalues()[0]) <= std::abs(es.eigenvalues()[1]) ? 0 : 1;
    v[0] = v[1] = {es.eigenvectors()(0, k), es.eigenvectors()(1, k)};
  }
  for (int i = 0; i < 2; ++i) {
    b.v3[i] = tangent_vector(mj, v[i]);
    b.c[i] = c(v[i][0], v[i][1]);
  }
  return b;
}

// C on a branch with its line oriented along a reference vector.
double aligned(const BranchSample& b, int branch, const Vec3& ref) {
  return dot(b.v3[branch], ref) >= 0.0 ? b.c[branch] : -b.c[branch];
}

bool negative(double x) { return x < 0.0; }

}  // namespace

CurveTrace trace_flecnodal(const SurfaceSpec& spec, int grid) {
  if (grid < 16) throw UsageError("grid resolution must be at least 16");
  CurveTrace trace;
  trace.kind = CurveKind::flecnodal;
  auto mesh = std::make_shared<DomainMesh>(spec, grid);
  std::vector<BranchSample> samples(mesh->vertex_count());
  double rmax = 0.0;
  std::size_t hyperbolic = 0, flat = 0;
  for (std::size_t v = 0; v < samples.size(); ++v) {
    samples[v] = branch_sample(spec, mesh->vertex(v));
    rmax = std::max(rmax, std::abs(samples[v].res));
    if (samples[v].hyperbolic) {
      ++hyperbolic;
      if (std::abs(samples[v].res) <= 1e-9 * samples[v].res_scale) ++flat;
    }
  }
  if (hyperbolic > 0 && flat * 10 > hyperbolic) {
    trace.degenerate = true;
    trace.degenerate_reason = "flecnodal everywhere: Res(Q, C) vanishes on the hyperbolic domain";
  }

  // Each branch is contoured on its own: near a hyperbonode the two branches cross at a
  // small angle, and their product Res(Q, C) keeps one sign on most of the grid there.
  // Lines carry no orientation, so values are compared only after aligning the line at
  // one end of an edge with the line at the other.
  struct Crossing {
    ChartPoint point;
    bool accepted = false;
    std::vector<int> next;
  };
  std::vector<Crossing> crossings;
  double worst = 0.0;
  for (int branch = 0; branch < 2; ++branch) {
    std::map<std::pair<std::size_t, std::size_t>, int> on_edge;
    auto edge_crossing = [&](const DomainMesh::Cell& cell, int k) -> int {
      const int k1 = (k + 1) % 4;
      const bool forward = cell.vid[k] < cell.vid[k1];
      const int lo = forward ? k : k1, hi = forward ? k1 : k;
      const auto key = std::make_pair(cell.vid[lo], cell.vid[hi]);
      if (auto it = on_edge.find(key); it != on_edge.end()) return it->second;
      const BranchSample& a = samples[cell.vid[lo]];
      const BranchSample& b = samples[cell.vid[hi]];
      const Vec3 ref = a.v3[branch];
      const double fa = a.c[branch], fb = aligned(b, branch, ref);
      int id = -1;
      if (negative(fa) != negative(fb)) {
        auto at = [&](double lambda) {
          const Point2& p0 = cell.corner[lo];
          const Point2& p1 = cell.corner[hi];
          return spec.canonical({cell.chart, p0.s + lambda * (p1.s - p0.s), p0.t + lambda * (p1.t - p0.t)});
        };
        auto f = [&](double lambda) {
          if (lambda <= 0.0) return fa;
          if (lambda >= 1.0) return fb;
          return aligned(branch_sample(spec, at(lambda)), branch, ref);
        };
        double lambda = fa / (fa - fb);
        if (fa != 0.0 && fb != 0.0) {
          std::uintmax_t iters = 60;
          const auto r = boost::math::tools::toms748_solve(f, 0.0, 1.0, fa, fb,
                                                           boost::math::tools::eps_tolerance<double>(45), iters);
          lambda = 0.5 * (r.first + r.second);
        }
        Crossing c;
        c.point = at(lambda);
        const BranchSample s = branch_sample(spec, c.point);
        // A sign change can also come from a flip of the alignment, where the line turns
        // through a right angle within one edge; those are not zeros of Res.
        c.accepted = s.closed_hyperbolic && std::abs(s.res) <= 1e-6 * s.res_scale;
        if (c.accepted) worst = std::max(worst, std::abs(s.res));
        id = static_cast<int>(crossings.size());
        crossings.push_back(std::move(c));
      }
      on_edge.emplace(key, id);
      return id;
    };
    for (const auto& cell : mesh->cells()) {
      std::array<int, 4> e{};
      int count = 0;
      for (int k = 0; k < 4; ++k) count += (e[k] = edge_crossing(cell, k)) >= 0;
      auto join = [&](int a, int b) {
        crossings[a].next.push_back(b);
        crossings[b].next.push_back(a);
      };
      if (count == 2) {
        int first = -1;
        for (int k = 0; k < 4; ++k) {
          if (e[k] < 0) continue;
          if (first < 0) first = e[k];
          else join(first, e[k]);
        }
      } else if (count == 4) {
        const Vec3 ref = samples[cell.vid[0]].v3[branch];
        Point2 mid;
        for (const auto& p : cell.corner) mid.s += 0.25 * p.s, mid.t += 0.25 * p.t;
        const double centre = aligned(branch_sample(spec, spec.canonical({cell.chart, mid.s, mid.t})), branch, ref);
        if (negative(centre) == negative(samples[cell.vid[0]].c[branch])) {
          join(e[0], e[1]);
          join(e[2], e[3]);
        } else {
          join(e[3], e[0]);
          join(e[1], e[2]);
        }
      }
    }
  }

  // Chain crossings into polylines, open ends first, then cycles; keep the accepted runs.
  std::vector<char> used(crossings.size(), 0);
  auto emit = [&](std::vector<int> chain, bool closed) {
    bool all = true;
    for (int c : chain) all = all && crossings[c].accepted;
    if (all && closed) {
      TracePolyline tp;
      tp.closed = true;
      for (int c : chain) tp.points.push_back(crossings[c].point);
      trace.polylines.push_back(std::move(tp));
      return;
    }
    if (closed) {
      // Start the cycle at a rejected crossing so no accepted run wraps around.
      const auto it = std::find_if(chain.begin(), chain.end(), [&](int c) { return !crossings[c].accepted; });
      std::rotate(chain.begin(), it, chain.end());
    }
    TracePolyline cur;
    for (std::size_t k = 0; k <= chain.size(); ++k) {
      if (k == chain.size() || !crossings[chain[k]].accepted) {
        if (cur.points.size() >= 2) trace.polylines.push_back(std::move(cur));
        cur = TracePolyline{};
        continue;
      }
      cur.points.push_back(crossings[chain[k]].point);
    }
  };
  auto walk = [&](int start) {
    std::vector<int> chain{start};
    used[start] = 1;
    int prev = -1, cur = start;
    for (;;) {
      int step = -1;
      for (int n : crossings[cur].next)
        if (n != prev && !used[n]) {
          step = n;
          break;
        }
      if (step < 0) break;
      used[step] = 1;
      chain.push_back(step);
      prev = cur;
      cur = step;
    }
    return chain;
  };
  for (std::size_t c = 0; c < crossings.size(); ++c)
    if (!used[c] && crossings[c].next.size() == 1) emit(walk(static_cast<int>(c)), false);
  for (std::size_t c = 0; c < crossings.size(); ++c)
    if (!used[c] && !crossings[c].next.empty()) emit(walk(static_cast<int>(c)), true);

  trace.tolerance = rmax > 0.0 ? worst / rmax : 0.0;
  trace.mesh = std::move(mesh);
  return trace;
}

NodeSearch find_nodes(const SurfaceSpec& spec, int grid, const NodeSearchOptions& opts) {
  if (grid < 16) throw UsageError("grid resolution must be at least 16");
  NodeSearch out;
  const DomainMesh mesh(spec, grid);
  const std::size_t nv = mesh.vertex_count();
  std::vector<double> merit(nv, std::numeric_limits<double>::infinity());
  std::size_t samples = 0, vanishing = 0;
  for (std::size_t v = 0; v < nv; ++v) {
    const MongeJet mj = scan_jet(spec, mesh.vertex(v), 3);
    const PointForms pf = fundamental_quantities(mj);
    const double qn = pf.Q.norm();
    if (std::abs(pf.H0) <= opts.parabolic_band * qn * qn || qn == 0.0) continue;
    const BinaryForm wm = split_cubic(pf.Q, pf.C, 0.0).Wminus;
    merit[v] = pf.W.norm() / (qn * qn * qn);
    ++samples;
    if (wm.norm() <= 1e-9 * qn * qn) ++vanishing;
  }
  if (samples > 0 && vanishing * 10 > samples) {
    out.degenerate = true;
    out.degenerate_reason = "W- vanishes on more than 10% of the samples: surface is quadric-like";
    return out;
  }

  const double h = mesh_param_scale(mesh);
  const double fd = 1e-5 * h;
  std::vector<CharPoint> found;
  for (std::size_t v = 0; v < nv; ++v) {
    if (!std::isfinite(merit[v])) continue;
    bool minimum = true;
    for (std::size_t w : mesh.neighbors()[v])
      if (merit[w] < merit[v] || (merit[w] == merit[v] && w < v)) minimum = false;
    if (!minimum) continue;
    ++out.seeds;

    ChartPoint p = mesh.vertex(v);
    NodeResidual r0 = node_residual(spec, p);
    const double scale = r0.q.norm() * r0.q.norm() * r0.q.norm();
    std::array<int, 2> pair = free_pair(r0.q);
    auto residual = [&](const ChartPoint& x) {
      const NodeResidual r = node_residual(spec, x);
      return Eigen::Vector2d(r.w.c[pair[0]] / scale, r.w.c[pair[1]] / scale);
    };
    auto jacobian = [&](const ChartPoint& x) {
      Eigen::Matrix2d j;
      j.col(0) = (residual({x.chart, x.s + fd, x.t}) - residual({x.chart, x.s - fd, x.t})) / (2 * fd);
      j.col(1) = (residual({x.chart, x.s, x.t + fd}) - residual({x.chart, x.s, x.t - fd})) / (2 * fd);
      return j;
    };
    bool converged = false;
    Eigen::Vector2d f = residual(p);
    try {
      for (int it = 0; it < opts.max_newton_iterations; ++it) {
        if (f.norm() <= opts.residual_tolerance) {
          converged = true;
          break;
        }
        // The free coordinates of U- follow Q along the iteration.
        pair = free_pair(node_residual(spec, p).q);
        f = residual(p);
        const Eigen::Matrix2d j = jacobian(p);
        Eigen::Vector2d step = -j.colPivHouseholderQr().solve(f);
        if (!step.allFinite()) break;
        if (step.norm() > 2.0 * h) step *= 2.0 * h / step.norm();
        double lambda = 1.0;
        bool improved = false;
        for (int k = 0; k < 12; ++k, lambda *= 0.5) {
          ChartPoint trial = spec.canonical({p.chart, p.s + lambda * step(0), p.t + lambda * step(1)});
          if (trial.chart != p.chart) {
            const auto saved = pair;
            pair = free_pair(node_residual(spec, trial).q);
            const Eigen::Vector2d ft = residual(trial);
            if (ft.norm() < f.norm()) {
              p = trial;
              f = ft;
              improved = true;
              break;
            }
            pair = saved;
            continue;
          }
          const Eigen::Vector2d ft = residual(trial);
          if (ft.norm() < f.norm()) {
            p = trial;
            f = ft;
            improved = true;
            break;
          }
        }
        if (!improved) {
          converged = f.norm() <= 1e3 * opts.residual_tolerance;
          break;
        }
        if (lambda * step.norm() <= 1e-14 * std::max(1.0, std::abs(p.s) + std::abs(p.t))) {
          converged = f.norm() <= 1e3 * opts.residual_tolerance;
          break;
        }
      }
    } catch (const Error&) {
      converged = false;
    }
    if (!converged || !spec.contains(p)) {
      ++out.discarded;
      continue;
    }
    const NodeResidual rn = node_residual(spec, p);
    const double qn = rn.q.norm();
    if (std::abs(rn.h0) <= opts.parabolic_band * qn * qn || rn.w.norm() > 1e3 * opts.residual_tolerance * qn * qn * qn) {
      ++out.discarded;
      continue;
    }
    const Eigen::Matrix2d j = jacobian(p);
    const double jn = j.squaredNorm();
    if (jn == 0.0 || std::abs(j.determinant()) < opts.isolation_tolerance * jn) {
      out.degenerate = true;
      out.degenerate_reason = "non-isolated node near " + describe(p) + ": the node set contains a curve";
      continue;
    }
    CharPoint node;
    node.kind = rn.h0 > 0.0 ? CharKind::ellipnode : CharKind::hyperbonode;
    node.param = p;
    node.position = spec.position(p);
    bool duplicate = false;
    for (const auto& other : found)
      if (norm(other.position - node.position) < opts.dedup_distance) duplicate = true;
    if (!duplicate) found.push_back(node);
  }
  for (auto& node : found) {
    try {
      attach_node_index(spec, node);
    } catch (const NonGenericError& e) {
      out.degenerate = true;
      out.degenerate_reason = std::string("non-generic node at ") + describe(node.param) + ": " + e.what();
    }
  }
  std::sort(found.begin(), found.end(), [](const CharPoint& a, const CharPoint& b) { return point_less(a.param, b.param); });
  out.nodes = std::move(found);
  return out;
}

int godron_sign(const CharPoint& g, const SurfaceSpec& spec, const CurveTrace& parabolic, int sample_offset) {
  if (g.polyline < 0 || g.polyline >= static_cast<int>(parabolic.polylines.size()))
    throw UsageError("godron_sign: godron is not attached to a polyline of the trace");
  const TracePolyline& pl = parabolic.polylines[g.polyline];
  const int n = static_cast<int>(pl.points.size());
  const int off = std::max(1, sample_offset);
  auto vertex_at = [&](int idx) {
    if (pl.closed) return pl.points[((idx % n) + n) % n];
    return pl.points[std::clamp(idx, 0, n - 1)];
  };
  // Walk off vertices away from the godron in each direction, skipping vertices that coincide
  // with it (a godron sitting on a grid vertex produces repeated crossings).
  auto sample = [&](int start, int dir) {
    int idx = start, taken = 0;
    ChartPoint p = vertex_at(idx);
    for (int guard = 0; guard < n; ++guard) {
      p = vertex_at(idx);
      if (norm(spec.position(p) - g.position) > 1e-9) ++taken;
      if (taken == off) break;
      const int next = idx + dir;
      if (!pl.closed && (next < 0 || next >= n)) break;
      idx = next;
    }
    return p;
  };
  const ChartPoint before = sample(g.segment, -1);
  const ChartPoint after = sample(g.segment + 1, 1);
  int signs[2];
  int idx = 0;
  for (const ChartPoint& p : {before, after}) {
    const KernelSample k = kernel_sample(spec, p);
    if (k.g == 0.0) throw NonGenericError("godron_sign: sample point is itself a godron");
    // Orient the kernel towards the hyperbolic side, where H decreases.
    const Vec3 v = k.g < 0.0 ? k.v3 : -1.0 * k.v3;
    const double d = dot(v, g.position - spec.position(p));
    if (d == 0.0) throw NonGenericError("godron_sign: asymptotic half-line is orthogonal to the godron direction");
    signs[idx++] = d > 0.0 ? 1 : -1;
  }
  if (signs[0] != signs[1]) {
    throw NonGenericError("godron_sign: the two sides of the godron at " + describe(g.param) + " disagree");
  }
  return signs[0];
}

GodronSearch find_godrons(const CurveTrace& parabolic, const SurfaceSpec& spec, int sample_offset) {
  if (parabolic.kind != CurveKind::parabolic) throw UsageError("find_godrons needs a parabolic trace");
  GodronSearch out;
  if (!parabolic.contour) return out;
  const Contour& contour = *parabolic.contour;
  const auto raw = contour.polylines();
  const double h = parabolic.mesh->spacing();
  const double fd = 1e-6 * h;

  for (int pi = 0; pi < static_cast<int>(parabolic.polylines.size()); ++pi) {
    const TracePolyline& pl = parabolic.polylines[pi];
    const auto& rpl = raw[pi];
    const int n = static_cast<int>(pl.points.size());
    if (n < 2) continue;
    std::vector<KernelSample> ks;
    ks.reserve(n);
    double gmax = 0.0, dhmax = 0.0;
    for (int k = 0; k < n; ++k) {
      KernelSample s = kernel_sample(spec, pl.points[k]);
      if (s.forms.Q.norm() <= 1e-12) {
        out.degenerate = true;
        out.degenerate_reason = "flat point on the parabolic curve near " + describe(pl.points[k]);
      }
      if (k > 0 && dot(s.v3, ks.back().v3) < 0.0) {
        s.v = {-s.v[0], -s.v[1]};
        s.v3 = -1.0 * s.v3;
        s.g = -s.g;
      }
      gmax = std::max(gmax, std::abs(s.g));
      dhmax = std::max(dhmax, std::hypot(s.forms.dH.c[0], s.forms.dH.c[1]));
      ks.push_back(std::move(s));
    }
    if (gmax <= 1e-7 * dhmax) {
      out.degenerate = true;
      out.degenerate_reason = "the kernel of Q is tangent to the whole parabolic curve: godrons are not isolated";
      continue;
    }
    std::vector<CharPoint> on_curve;
    const int edges = pl.closed ? n : n - 1;
    for (int k = 0; k < edges; ++k) {
      const int next = (k + 1) % n;
      const double ga = ks[k].g;
      double gb = ks[next].g;
      if (dot(ks[next].v3, ks[k].v3) < 0.0) gb = -gb;
      if (!(ga * gb < 0.0 || ga == 0.0)) continue;
      const Vec3 ref = ks[k].v3;
      auto g_of = [&](double u) { return oriented_g(spec, polyline_point(contour, rpl, k, u), ref); };
      double u = 0.0;
      if (ga != 0.0) {
        boost::uintmax_t iters = 60;
        const auto r = boost::math::tools::toms748_solve(
            g_of, 0.0, 1.0, ga, gb, [](double a, double b) { return std::abs(b - a) <= 1e-13; }, iters);
        u = 0.5 * (r.first + r.second);
      }
      ChartPoint p = polyline_point(contour, rpl, k, u);

      // Joint Newton on (H, g) to put the godron on the true parabolic curve.
      auto eqs = [&](const ChartPoint& x) {
        return Eigen::Vector2d(hessian_at(spec, x), oriented_g(spec, x, ref));
      };
      ChartPoint q = p;
      bool ok = true;
      try {
        for (int it = 0; it < 20; ++it) {
          const Eigen::Vector2d f = eqs(q);
          Eigen::Matrix2d j;
          j.col(0) = (eqs({q.chart, q.s + fd, q.t}) - eqs({q.chart, q.s - fd, q.t})) / (2 * fd);
          j.col(1) = (eqs({q.chart, q.s, q.t + fd}) - eqs({q.chart, q.s, q.t - fd})) / (2 * fd);
          const Eigen::Vector2d step = -j.colPivHouseholderQr().solve(f);
          if (!step.allFinite()) {
            ok = false;
            break;
          }
          q = {q.chart, q.s + step(0), q.t + step(1)};
          if (step.norm() <= 1e-14 * std::max(1.0, std::abs(q.s) + std::abs(q.t))) break;
        }
      } catch (const Error&) {
        ok = false;
      }
      if (ok && std::hypot(q.s - p.s, q.t - p.t) < h && q.chart == p.chart) p = spec.canonical(q);

      CharPoint gp;
      gp.kind = CharKind::godron;
      gp.param = p;
      gp.position = spec.position(p);
      gp.polyline = pi;
      gp.segment = k;
      try {
        MongeJet mj = eval_monge_jet(spec, p, 4);
        const auto v = kernel_direction(quadratic_part(mj.f));
        const MongeJet aligned = change_tangent_frame(mj, {v[0], -v[1], v[1], v[0]});
        const double f21 = aligned.fij(2, 1);
        if (f21 != 0.0) gp.rho_platonova = aligned.fij(0, 2) * aligned.fij(4, 0) / (3.0 * f21 * f21);
      } catch (const Error&) {
      }
      bool duplicate = false;
      for (const auto& other : on_curve)
        if (norm(other.position - gp.position) < 1e-7) duplicate = true;
      if (!duplicate) on_curve.push_back(gp);
    }
    // Sample offsets stay within half the gap to the neighbouring godrons.
    for (std::size_t i = 0; i < on_curve.size(); ++i) {
      int gap = n;
      for (std::size_t j = 0; j < on_curve.size(); ++j) {
        if (i == j) continue;
        int d = std::abs(on_curve[j].segment - on_curve[i].segment);
        if (pl.closed) d = std::min(d, n - d);
        gap = std::min(gap, d);
      }
      const int off = std::max(1, std::min(sample_offset, gap / 2));
      try {
        on_curve[i].sign = godron_sign(on_curve[i], spec, parabolic, off);
        on_curve[i].index = godron_tau_index(on_curve[i].sign);
      } catch (const NonGenericError& e) {
        out.degenerate = true;
        out.degenerate_reason = e.what();
      }
      out.godrons.push_back(on_curve[i]);
    }
  }
  return out;
}

}  // namespace godron
