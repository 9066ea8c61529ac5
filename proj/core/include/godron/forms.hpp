#pragma once

#include <array>
#include <vector>

#include "godron/surface.hpp"

namespace godron {

/// Homogeneous form of degree 0..3 in the tangent variables (dx, dy).
/// c[i] multiplies dx^(degree - i) dy^i.
struct BinaryForm {
  int degree = 0;
  std::array<double, 4> c{};

  BinaryForm() = default;
  BinaryForm(int degree, std::array<double, 4> coeffs);
  static BinaryForm zero(int degree);

  double operator()(double x, double y) const;
  /// Largest absolute coefficient.
  double norm() const;

  BinaryForm& operator+=(const BinaryForm& o);
  BinaryForm& operator-=(const BinaryForm& o);
  BinaryForm& operator*=(double s);
  friend BinaryForm operator+(BinaryForm a, const BinaryForm& b) { return a += b; }
  friend BinaryForm operator-(BinaryForm a, const BinaryForm& b) { return a -= b; }
  friend BinaryForm operator*(BinaryForm a, double s) { return a *= s; }
  friend BinaryForm operator*(double s, BinaryForm a) { return a *= s; }
  /// Polynomial product; the degrees must sum to at most 3.
  friend BinaryForm operator*(const BinaryForm& a, const BinaryForm& b);
};

/// Q = f20/2 dx^2 + f11 dxdy + f02/2 dy^2 read from a jet.
BinaryForm quadratic_part(const Jet2& f);
/// C = sum f_ij/(i! j!) dx^i dy^j over i + j = 3.
BinaryForm cubic_part(const Jet2& f);
/// 4(ac - b^2) for Q = a x^2 + 2b xy + c y^2, which equals f20 f02 - f11^2.
double hessian_of(const BinaryForm& q);

struct PointForms {
  BinaryForm Q;
  BinaryForm C;
  double H0 = 0.0;
  BinaryForm dH;
  BinaryForm W;
};

/// Q, C, H0, dH and W = 4 H0 C - Q dH from a Monge jet of order >= 3.
PointForms fundamental_quantities(const MongeJet& mj);
PointForms fundamental_quantities(const Jet2& f);

/// True when |H0| <= rel_tol * |Q|^2.
bool is_parabolic(const BinaryForm& q, double rel_tol = 1e-9);

/// The operator c d_xx - 2b d_xy + a d_yy for Q = a x^2 + 2b xy + c y^2, on forms of degree 2 or 3.
BinaryForm lambda_op(const BinaryForm& q, const BinaryForm& p);

struct CubicSplitting {
  BinaryForm L;       // degree 1
  BinaryForm Wminus;  // degree 3, annihilated by lambda_op(Q, .)
};

/// C = Q L + Wminus with L = lambda_op(Q, C) / (2 H_Q).
/// Throws ParabolicPointError when Q is degenerate.
CubicSplitting split_cubic(const BinaryForm& q, const BinaryForm& c, double rel_tol = 1e-9);

struct ZeroLines {
  /// Line angles in [0, pi), ascending; a line through (cos a, sin a).
  std::vector<double> angles;
  std::vector<int> multiplicity;
  /// The form vanished identically; no lines are reported.
  bool zero_form = false;

  int count() const { return static_cast<int>(angles.size()); }
};

/// Real lines of zeros of a form of degree 1..3. Roots closer than merge_angle
/// are reported once with their combined multiplicity.
ZeroLines real_zero_lines(const BinaryForm& p, double merge_angle = 1e-6);

/// Sylvester resultant of a quadratic and a cubic form (a 5x5 determinant). It vanishes
/// exactly when the two forms share a line of zeros.
double resultant(const BinaryForm& q, const BinaryForm& c);

/// Unit direction (x, y) spanning the kernel of a degenerate quadratic form.
std::array<double, 2> kernel_direction(const BinaryForm& q);

}  // namespace godron
