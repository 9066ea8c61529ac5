#include "godron/forms.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "godron/error.hpp"

namespace godron {

namespace {

constexpr double kPi = std::numbers::pi;

void check_degree(int degree) {
  if (degree < 0 || degree > 3) throw UsageError("binary form degree must lie in 0..3");
}

// Polynomial in t, lowest degree first.
using Poly = std::vector<double>;

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

double poly_eval(const Poly& p, double t) {
  double v = 0.0;
  for (std::size_t k = p.size(); k-- > 0;) v = v * t + p[k];
  return v;
}

double poly_deriv_eval(const Poly& p, double t) {
  double v = 0.0;
  for (std::size_t k = p.size(); k-- > 1;) v = v * t + static_cast<double>(k) * p[k];
  return v;
}

struct Root {
  double re;
  double im;
};

// Roots of a polynomial of degree 1..3 with nonzero leading coefficient.
std::vector<Root> solve_low_degree(const Poly& p) {
  const int d = static_cast<int>(p.size()) - 1;
  const double lead = p[d];
  if (d == 1) return {{-p[0] / lead, 0.0}};
  if (d == 2) {
    const double b = p[1] / lead, c = p[0] / lead;
    const double disc = b * b - 4.0 * c;
    if (disc >= 0.0) {
      // Avoid cancellation in the smaller root.
      const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
      if (q == 0.0) return {{0.0, 0.0}, {0.0, 0.0}};
      return {{q, 0.0}, {c / q, 0.0}};
    }
    return {{-0.5 * b, 0.5 * std::sqrt(-disc)}, {-0.5 * b, -0.5 * std::sqrt(-disc)}};
  }
  const double a = p[2] / lead, b = p[1] / lead, c = p[0] / lead;
  const double shift = a / 3.0;
  const double pp = b - a * a / 3.0;
  const double qq = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double disc = qq * qq / 4.0 + pp * pp * pp / 27.0;
  if (disc <= 0.0 && pp < 0.0) {
    const double m = 2.0 * std::sqrt(-pp / 3.0);
    const double arg = std::clamp(3.0 * qq / (pp * m), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    std::vector<Root> roots;
    for (int k = 0; k < 3; ++k) roots.push_back({m * std::cos(theta - 2.0 * kPi * k / 3.0) - shift, 0.0});
    return roots;
  }
  const double sd = std::sqrt(std::max(disc, 0.0));
  const double u = std::cbrt(-qq / 2.0 + sd);
  const double v = std::cbrt(-qq / 2.0 - sd);
  const double s1 = u + v;
  const double im = std::sqrt(3.0) / 2.0 * (u - v);
  return {{s1 - shift, 0.0}, {-s1 / 2.0 - shift, im}, {-s1 / 2.0 - shift, -im}};
}

double wrap_pi(double a) {
  a = std::fmod(a, kPi);
  if (a < 0.0) a += kPi;
  if (a >= kPi) a -= kPi;
  return a;
}

}  // namespace

BinaryForm::BinaryForm(int d, std::array<double, 4> coeffs) : degree(d), c(coeffs) {
  check_degree(d);
  for (int i = d + 1; i < 4; ++i) c[i] = 0.0;
}

BinaryForm BinaryForm::zero(int d) { return BinaryForm(d, {}); }

double BinaryForm::operator()(double x, double y) const {
  double v = 0.0;
  for (int i = 0; i <= degree; ++i) v += c[i] * std::pow(x, degree - i) * std::pow(y, i);
  return v;
}

double BinaryForm::norm() const {
  double m = 0.0;
  for (int i = 0; i <= degree; ++i) m = std::max(m, std::abs(c[i]));
  return m;
}

BinaryForm& BinaryForm::operator+=(const BinaryForm& o) {
  if (degree != o.degree) throw UsageError("adding binary forms of different degrees");
  for (int i = 0; i < 4; ++i) c[i] += o.c[i];
  return *this;
}

BinaryForm& BinaryForm::operator-=(const BinaryForm& o) {
  if (degree != o.degree) throw UsageError("subtracting binary forms of different degrees");
  for (int i = 0; i < 4; ++i) c[i] -= o.c[i];
  return *this;
}

BinaryForm& BinaryForm::operator*=(double s) {
  for (double& x : c) x *= s;
  return *this;
}

BinaryForm operator*(const BinaryForm& a, const BinaryForm& b) {
  if (a.degree + b.degree > 3) throw UsageError("binary form product of degree above 3");
  BinaryForm out = BinaryForm::zero(a.degree + b.degree);
  for (int i = 0; i <= a.degree; ++i)
    for (int j = 0; j <= b.degree; ++j) out.c[i + j] += a.c[i] * b.c[j];
  return out;
}

BinaryForm quadratic_part(const Jet2& f) {
  if (f.order() < 2) throw UsageError("quadratic part needs a jet of order >= 2");
  return BinaryForm(2, {f.coeff(2, 0), f.coeff(1, 1), f.coeff(0, 2), 0.0});
}

BinaryForm cubic_part(const Jet2& f) {
  if (f.order() < 3) throw UsageError("cubic part needs a jet of order >= 3");
  return BinaryForm(3, {f.coeff(3, 0), f.coeff(2, 1), f.coeff(1, 2), f.coeff(0, 3)});
}

double hessian_of(const BinaryForm& q) {
  const double a = q.c[0], b = 0.5 * q.c[1], c = q.c[2];
  return 4.0 * (a * c - b * b);
}

PointForms fundamental_quantities(const Jet2& f) {
  if (f.order() < 3) throw UsageError("fundamental quantities need a jet of order >= 3");
  PointForms pf;
  pf.Q = quadratic_part(f);
  pf.C = cubic_part(f);
  const double f20 = f.derivative(2, 0), f11 = f.derivative(1, 1), f02 = f.derivative(0, 2);
  const double f30 = f.derivative(3, 0), f21 = f.derivative(2, 1);
  const double f12 = f.derivative(1, 2), f03 = f.derivative(0, 3);
  pf.H0 = f20 * f02 - f11 * f11;
  const double hx = f30 * f02 + f20 * f12 - 2.0 * f11 * f21;
  const double hy = f21 * f02 + f20 * f03 - 2.0 * f11 * f12;
  pf.dH = BinaryForm(1, {hx, hy, 0.0, 0.0});
  pf.W = 4.0 * pf.H0 * pf.C - pf.Q * pf.dH;
  return pf;
}

PointForms fundamental_quantities(const MongeJet& mj) { return fundamental_quantities(mj.f); }

bool is_parabolic(const BinaryForm& q, double rel_tol) {
  const double s = q.norm();
  return std::abs(hessian_of(q)) <= rel_tol * s * s;
}

BinaryForm lambda_op(const BinaryForm& q, const BinaryForm& p) {
  if (q.degree != 2) throw UsageError("lambda_op: Q must be quadratic");
  const double a = q.c[0], b = 0.5 * q.c[1], c = q.c[2];
  if (p.degree == 2) {
    return BinaryForm(0, {2.0 * c * p.c[0] - 2.0 * b * p.c[1] + 2.0 * a * p.c[2], 0.0, 0.0, 0.0});
  }
  if (p.degree == 3) {
    return BinaryForm(1, {6.0 * c * p.c[0] - 4.0 * b * p.c[1] + 2.0 * a * p.c[2],
                          2.0 * c * p.c[1] - 4.0 * b * p.c[2] + 6.0 * a * p.c[3], 0.0, 0.0});
  }
  throw UsageError("lambda_op: form degree must be 2 or 3");
}

CubicSplitting split_cubic(const BinaryForm& q, const BinaryForm& c, double rel_tol) {
  if (q.degree != 2 || c.degree != 3) throw UsageError("split_cubic expects a quadratic and a cubic");
  if (is_parabolic(q, rel_tol)) throw ParabolicPointError("cubic splitting undefined: Q is degenerate");
  CubicSplitting out;
  out.L = lambda_op(q, c) * (1.0 / (2.0 * hessian_of(q)));
  out.Wminus = c - q * out.L;
  return out;
}

ZeroLines real_zero_lines(const BinaryForm& p, double merge_angle) {
  ZeroLines out;
  if (p.degree < 1) throw UsageError("real_zero_lines needs a form of degree >= 1");
  if (p.norm() == 0.0) {
    out.zero_form = true;
    return out;
  }
  // Parametrize directions as e + t e_perp, with e_perp chosen far from every zero so the
  // restricted polynomial keeps full degree and no root escapes to infinity.
  double best_phi = 0.0, best_val = -1.0;
  for (int k = 0; k < 12; ++k) {
    const double phi = 0.0123 + k * kPi / 12.0;
    const double val = std::abs(p(-std::sin(phi), std::cos(phi)));
    if (val > best_val) {
      best_val = val;
      best_phi = phi;
    }
  }
  const double cp = std::cos(best_phi), sp = std::sin(best_phi);
  const Poly x_of_t{cp, -sp};
  const Poly y_of_t{sp, cp};
  Poly g(p.degree + 1, 0.0);
  for (int i = 0; i <= p.degree; ++i) {
    Poly term{p.c[i]};
    for (int k = 0; k < p.degree - i; ++k) term = poly_mul(term, x_of_t);
    for (int k = 0; k < i; ++k) term = poly_mul(term, y_of_t);
    for (std::size_t k = 0; k < term.size(); ++k) g[k] += term[k];
  }

  struct Line {
    double angle;
    int mult;
  };
  std::vector<Line> lines;
  for (Root r : solve_low_degree(g)) {
    if (r.im != 0.0) {
      // A conjugate pair this close to the real axis is a split double root.
      if (r.im > 0.0 && std::abs(r.im) / (1.0 + r.re * r.re) < merge_angle) {
        lines.push_back({wrap_pi(best_phi + std::atan(r.re)), 2});
      }
      continue;
    }
    double t = r.re;
    for (int it = 0; it < 2; ++it) {
      const double d = poly_deriv_eval(g, t);
      if (d == 0.0) break;
      const double next = t - poly_eval(g, t) / d;
      if (!(std::abs(poly_eval(g, next)) < std::abs(poly_eval(g, t)))) break;
      t = next;
    }
    lines.push_back({wrap_pi(best_phi + std::atan(t)), 1});
  }
  std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) { return a.angle < b.angle; });

  std::vector<Line> merged;
  for (const Line& l : lines) {
    if (!merged.empty() && l.angle - merged.back().angle < merge_angle) {
      Line& m = merged.back();
      m.angle = (m.angle * m.mult + l.angle * l.mult) / (m.mult + l.mult);
      m.mult += l.mult;
    } else {
      merged.push_back(l);
    }
  }
  if (merged.size() > 1 && merged.front().angle + kPi - merged.back().angle < merge_angle) {
    Line& first = merged.front();
    const Line& last = merged.back();
    first.angle = wrap_pi((first.angle * first.mult + (last.angle - kPi) * last.mult) / (first.mult + last.mult));
    first.mult += last.mult;
    merged.pop_back();
    std::sort(merged.begin(), merged.end(), [](const Line& a, const Line& b) { return a.angle < b.angle; });
  }
  for (const Line& l : merged) {
    out.angles.push_back(l.angle);
    out.multiplicity.push_back(l.mult);
  }
  return out;
}

double resultant(const BinaryForm& q, const BinaryForm& c) {
  if (q.degree != 2 || c.degree != 3) throw UsageError("resultant expects a quadratic and a cubic");
  Eigen::Matrix<double, 5, 5> s = Eigen::Matrix<double, 5, 5>::Zero();
  for (int r = 0; r < 3; ++r)
    for (int k = 0; k < 3; ++k) s(r, r + k) = q.c[k];
  for (int r = 0; r < 2; ++r)
    for (int k = 0; k < 4; ++k) s(3 + r, r + k) = c.c[k];
  return s.determinant();
}

std::array<double, 2> kernel_direction(const BinaryForm& q) {
  if (q.degree != 2) throw UsageError("kernel_direction expects a quadratic form");
  const double a = q.c[0], b = 0.5 * q.c[1], c = q.c[2];
  const double mean = 0.5 * (a + c);
  const double rad = std::hypot(0.5 * (a - c), b);
  // Eigenvalue of smaller magnitude.
  const double lambda = std::abs(mean - rad) <= std::abs(mean + rad) ? mean - rad : mean + rad;
  double vx = b, vy = lambda - a;
  const double wx = lambda - c, wy = b;
  if (std::hypot(wx, wy) > std::hypot(vx, vy)) {
    vx = wx;
    vy = wy;
  }
  const double n = std::hypot(vx, vy);
  if (n == 0.0) return {1.0, 0.0};
  return {vx / n, vy / n};
}

}  // namespace godron
