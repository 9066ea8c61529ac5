#include "godron/surface.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "godron/error.hpp"
#include "godron/forms.hpp"

namespace godron {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kQuarterPi = std::numbers::pi / 4.0;

double wrap_period(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a -= kTwoPi;
  return a;
}

// Cube-sphere chart layout: chart 2k is the face +e_k, chart 2k+1 the face -e_k. The two
// tangent axes are ordered so that (d/da x d/db) points outward.
struct Face {
  int axis;
  double sign;
  int ta;
  int tb;
};

Face face_of(int chart) {
  const int k = chart / 2;
  const double sign = chart % 2 == 0 ? 1.0 : -1.0;
  const int k1 = (k + 1) % 3, k2 = (k + 2) % 3;
  return sign > 0 ? Face{k, sign, k1, k2} : Face{k, sign, k2, k1};
}

}  // namespace

int SurfaceSpec::euler_characteristic() const {
  switch (domain) {
    case DomainKind::rectangle: return 1;
    case DomainKind::torus: return 0;
    case DomainKind::cube_sphere: return 2;
  }
  return 0;
}

ChartPoint SurfaceSpec::canonical(const ChartPoint& p) const {
  switch (domain) {
    case DomainKind::rectangle: return p;
    case DomainKind::torus: return {0, wrap_period(p.s), wrap_period(p.t)};
    case DomainKind::cube_sphere: {
      const Face f = face_of(p.chart);
      double d[3];
      d[f.axis] = f.sign;
      d[f.ta] = std::tan(p.s);
      d[f.tb] = std::tan(p.t);
      int k = 0;
      for (int i = 1; i < 3; ++i)
        if (std::abs(d[i]) > std::abs(d[k])) k = i;
      const int chart = 2 * k + (d[k] < 0.0 ? 1 : 0);
      const Face g = face_of(chart);
      const double scale = std::abs(d[k]);
      return {chart, std::atan(d[g.ta] / scale), std::atan(d[g.tb] / scale)};
    }
  }
  return p;
}

bool SurfaceSpec::contains(const ChartPoint& p) const {
  constexpr double slack = 1e-12;
  switch (domain) {
    case DomainKind::rectangle:
      return p.chart == 0 && p.s >= s_min - slack && p.s <= s_max + slack && p.t >= t_min - slack &&
             p.t <= t_max + slack;
    case DomainKind::torus: return p.chart == 0;
    case DomainKind::cube_sphere:
      return p.chart >= 0 && p.chart < 6 && std::abs(p.s) <= kQuarterPi + slack &&
             std::abs(p.t) <= kQuarterPi + slack;
  }
  return false;
}

std::array<Jet2, 3> SurfaceSpec::jets(const ChartPoint& p, int order) const {
  if (!evaluator) throw UsageError("surface '" + name + "' has no evaluator");
  return evaluator(p.chart, Jet2::variable_x(order, p.s), Jet2::variable_y(order, p.t));
}

Vec3 SurfaceSpec::position(const ChartPoint& p) const {
  const auto x = jets(p, 0);
  return {x[0].value(), x[1].value(), x[2].value()};
}

FrameKind scan_frame(const SurfaceSpec& spec) {
  return spec.kind == SurfaceKind::monge_patch ? FrameKind::parametric : FrameKind::orthonormal;
}

MongeJet eval_monge_jet(const SurfaceSpec& spec, const ChartPoint& p, int order, FrameKind frame) {
  if (order < 1 || order > kMaxJetOrder) throw UsageError("eval_monge_jet: order out of range");
  if (frame == FrameKind::linear) throw UsageError("eval_monge_jet: linear frames come only from normalization");
  const auto x = spec.jets(p, order);
  const Vec3 x0{x[0].value(), x[1].value(), x[2].value()};
  const Vec3 xs{x[0].coeff(1, 0), x[1].coeff(1, 0), x[2].coeff(1, 0)};
  const Vec3 xt{x[0].coeff(0, 1), x[1].coeff(0, 1), x[2].coeff(0, 1)};
  const Vec3 nn = cross(xs, xt);
  if (!(norm(nn) > 1e-12 * norm(xs) * norm(xt)) || norm(xs) == 0.0) {
    throw DegenerateInputError("parametrization is not an immersion at (" + std::to_string(p.s) + ", " +
                               std::to_string(p.t) + ")");
  }
  MongeJet mj;
  mj.param = p;
  mj.base_point = x0;
  mj.frame = frame;
  const Vec3 unit_n = normalized(nn);
  Vec3 nu;
  if (frame == FrameKind::orthonormal) {
    mj.e1 = normalized(xs);
    mj.e2 = cross(unit_n, mj.e1);
    nu = unit_n;
  } else {
    mj.e1 = xs;
    mj.e2 = xt;
    nu = spec.kind == SurfaceKind::monge_patch ? Vec3{0.0, 0.0, 1.0} : unit_n;
  }
  mj.n = nu;

  // Solve X - X0 = x e1 + y e2 + z nu by Cramer's rule on the jets.
  const double det = det3(mj.e1, mj.e2, nu);
  const Vec3 rx = cross(mj.e2, nu) * (1.0 / det);
  const Vec3 ry = cross(nu, mj.e1) * (1.0 / det);
  const Vec3 rz = cross(mj.e1, mj.e2) * (1.0 / det);
  std::array<Jet2, 3> d = x;
  for (auto& j : d) j.coeff(0, 0) = 0.0;
  auto combine = [&](const Vec3& r) { return r.x * d[0] + r.y * d[1] + r.z * d[2]; };
  MapJet2 tangent{combine(rx), combine(ry)};
  const Jet2 height = combine(rz);

  if (order == 1) {
    mj.f = Jet2(order);
    return mj;
  }
  const MapJet2 inverse = jet_invert(tangent);
  mj.f = jet_compose(height, inverse);
  mj.f.coeff(0, 0) = 0.0;
  mj.f.coeff(1, 0) = 0.0;
  mj.f.coeff(0, 1) = 0.0;
  return mj;
}

MongeJet change_tangent_frame(const MongeJet& mj, const std::array<double, 4>& a) {
  MongeJet out = mj;
  const int order = mj.f.order();
  out.f = jet_compose(mj.f, MapJet2::linear(order, a[0], a[1], a[2], a[3]));
  out.e1 = a[0] * mj.e1 + a[2] * mj.e2;
  out.e2 = a[1] * mj.e1 + a[3] * mj.e2;
  const auto& l = mj.linear_change;
  out.linear_change = {l[0] * a[0] + l[1] * a[2], l[0] * a[1] + l[1] * a[3], l[2] * a[0] + l[3] * a[2],
                       l[2] * a[1] + l[3] * a[3]};
  out.frame = FrameKind::linear;
  return out;
}

MongeJet normalize_hyperbonode_frame(const MongeJet& mj) {
  const double f20 = mj.fij(2, 0), f11 = mj.fij(1, 1), f02 = mj.fij(0, 2);
  const double scale = std::max({std::abs(f20), std::abs(f11), std::abs(f02)});
  const double h = f20 * f02 - f11 * f11;
  if (!(h < -1e-9 * scale * scale)) {
    throw ClassificationError("hyperbonode frame requires a hyperbolic point");
  }
  std::array<double, 2> a1, a2;
  if (std::abs(f20) <= 1e-14 * scale && std::abs(f02) <= 1e-14 * scale) {
    a1 = {1.0, 0.0};
    a2 = {0.0, 1.0};
  } else {
    // Asymptotic directions sqrt(|l2|) e+ +- sqrt(l1) e- from the eigen-decomposition.
    const double mean = 0.5 * (f20 + f02);
    const double rad = std::hypot(0.5 * (f20 - f02), f11);
    const double l1 = mean + rad, l2 = mean - rad;
    double px = f11, py = l1 - f20;
    if (std::hypot(l1 - f02, f11) > std::hypot(px, py)) {
      px = l1 - f02;
      py = f11;
    }
    const double pn = std::hypot(px, py);
    px /= pn;
    py /= pn;
    const double mx = -py, my = px;
    const double wp = std::sqrt(-l2), wm = std::sqrt(l1);
    a1 = {wp * px + wm * mx, wp * py + wm * my};
    a2 = {wp * px - wm * mx, wp * py - wm * my};
    for (auto* v : {&a1, &a2}) {
      const double n = std::hypot((*v)[0], (*v)[1]);
      (*v)[0] /= n;
      (*v)[1] /= n;
    }
    // Keep the first axis closest to the old x-axis.
    if (std::abs(a2[0]) > std::abs(a1[0])) std::swap(a1, a2);
    if (a1[0] < 0.0) a1 = {-a1[0], -a1[1]};
  }
  const double cross_term = f20 * a1[0] * a2[0] + f11 * (a1[0] * a2[1] + a1[1] * a2[0]) + f02 * a1[1] * a2[1];
  if (cross_term < 0.0) a2 = {-a2[0], -a2[1]};
  MongeJet out = change_tangent_frame(mj, {a1[0], a2[0], a1[1], a2[1]});
  out.f.coeff(2, 0) = 0.0;
  out.f.coeff(0, 2) = 0.0;
  return out;
}

MongeJet normalize_ellipnode_frame(const MongeJet& mj, double node_tolerance) {
  if (mj.f.order() < 3) throw UsageError("ellipnode frame needs a jet of order >= 3");
  const double f20 = mj.fij(2, 0), f11 = mj.fij(1, 1), f02 = mj.fij(0, 2);
  const double scale = std::max({std::abs(f20), std::abs(f11), std::abs(f02)});
  const double h = f20 * f02 - f11 * f11;
  if (!(h > 1e-9 * scale * scale)) throw ClassificationError("ellipnode frame requires an elliptic point");

  MongeJet circ = mj;
  if (std::abs(f20 - f02) > 1e-12 * scale || std::abs(f11) > 1e-12 * scale) {
    const double mean = 0.5 * (f20 + f02);
    const double rad = std::hypot(0.5 * (f20 - f02), f11);
    const double l1 = mean + rad, l2 = mean - rad;
    double px = f11, py = l1 - f20;
    if (std::hypot(l1 - f02, f11) > std::hypot(px, py)) {
      px = l1 - f02;
      py = f11;
    }
    const double pn = std::hypot(px, py);
    px /= pn;
    py /= pn;
    const double m = std::copysign(std::sqrt(l1 * l2), l1);
    const double s1 = std::sqrt(m / l1), s2 = std::sqrt(m / l2);
    circ = change_tangent_frame(mj, {px * s1, -py * s2, py * s1, px * s2});
    circ.f.coeff(1, 1) = 0.0;
    circ.f.coeff(0, 2) = circ.f.coeff(2, 0);
  }

  const BinaryForm q = quadratic_part(circ.f);
  const CubicSplitting split = split_cubic(q, cubic_part(circ.f));
  if (split.Wminus.norm() > node_tolerance * std::max(1.0, q.norm())) {
    throw ValidationError("ellipnode frame requires a node: cubic part is not divisible by Q");
  }
  // The projective map (x, y, z) -> (x, y, z) / (1 - L) sends the graph of f to the graph of
  // Z(X, Y) = f(X / (1 + L), Y / (1 + L)) * (1 + L), which cancels C = Q L.
  const int order = circ.f.order();
  Jet2 one_plus_l = Jet2::constant(order, 1.0);
  one_plus_l.coeff(1, 0) = split.L.c[0];
  one_plus_l.coeff(0, 1) = split.L.c[1];
  const Jet2 inv = reciprocal(one_plus_l);
  const MapJet2 m{Jet2::variable_x(order) * inv, Jet2::variable_y(order) * inv};
  MongeJet out = circ;
  out.f = jet_compose(circ.f, m) * one_plus_l;
  out.f.coeff(0, 0) = 0.0;
  out.f.coeff(1, 0) = 0.0;
  out.f.coeff(0, 1) = 0.0;
  for (int j = 0; j <= 3; ++j) out.f.coeff(3 - j, j) = 0.0;
  out.frame = FrameKind::linear;
  return out;
}

}  // namespace godron
