#pragma once

#include <array>
#include <cstddef>

namespace godron {

inline constexpr int kMaxJetOrder = 6;

/// Truncated Taylor polynomial in two variables.
///
/// Coefficients are stored in the monomial convention: coeff(i, j) multiplies
/// x^i y^j. derivative(i, j) exposes the same data in the derivative convention
/// f_ij = coeff(i, j) * i! * j!, which is what every geometric formula uses.
/// All arithmetic truncates terms of total degree above order().
class Jet2 {
 public:
  Jet2() = default;
  explicit Jet2(int order);

  static Jet2 constant(int order, double value);
  /// x0 + dx, the jet of the first coordinate function at x0.
  static Jet2 variable_x(int order, double x0 = 0.0);
  /// y0 + dy.
  static Jet2 variable_y(int order, double y0 = 0.0);

  int order() const { return order_; }

  double coeff(int i, int j) const { return c_[index(i, j)]; }
  double& coeff(int i, int j) { return c_[index(i, j)]; }
  double derivative(int i, int j) const;
  void set_derivative(int i, int j, double f_ij);
  double value() const { return c_[0]; }

  /// Evaluates the polynomial at a displacement (dx, dy).
  double evaluate(double dx, double dy) const;
  /// The homogeneous part of the given total degree.
  Jet2 homogeneous_part(int degree) const;
  Jet2 truncated(int order) const;
  /// Largest absolute coefficient.
  double max_abs() const;

  Jet2& operator+=(const Jet2& o);
  Jet2& operator-=(const Jet2& o);
  Jet2& operator*=(double s);
  Jet2& operator*=(const Jet2& o);
  Jet2& operator+=(double s) {
    c_[0] += s;
    return *this;
  }
  Jet2 operator-() const;

  friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
  friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
  friend Jet2 operator*(const Jet2& a, const Jet2& b);
  friend Jet2 operator*(Jet2 a, double s) { return a *= s; }
  friend Jet2 operator*(double s, Jet2 a) { return a *= s; }
  friend Jet2 operator+(Jet2 a, double s) { return a += s; }
  friend Jet2 operator+(double s, Jet2 a) { return a += s; }
  friend Jet2 operator-(Jet2 a, double s) { return a += -s; }
  friend Jet2 operator-(double s, const Jet2& a) { return -a + s; }
  friend Jet2 operator/(const Jet2& a, const Jet2& b);
  friend Jet2 operator/(Jet2 a, double s) { return a *= 1.0 / s; }

  static constexpr std::size_t index(int i, int j) {
    const int d = i + j;
    return static_cast<std::size_t>(d * (d + 1) / 2 + j);
  }

 private:
  static constexpr std::size_t kCapacity = (kMaxJetOrder + 1) * (kMaxJetOrder + 2) / 2;
  int order_ = 0;
  std::array<double, kCapacity> c_{};
};

/// Product truncated to the common order. Throws UsageError on mismatched orders.
Jet2 jet_mul(const Jet2& a, const Jet2& b);

/// Elementary functions, expanded about the constant term.
Jet2 reciprocal(const Jet2& a);
Jet2 sqrt(const Jet2& a);
Jet2 pow(const Jet2& a, double exponent);
Jet2 exp(const Jet2& a);
Jet2 sin(const Jet2& a);
Jet2 cos(const Jet2& a);
Jet2 tan(const Jet2& a);

/// Germ of a planar map at the origin: both components have zero constant term.
struct MapJet2 {
  Jet2 u;
  Jet2 v;

  static MapJet2 identity(int order);
  /// The linear map (x, y) -> (a x + b y, c x + d y).
  static MapJet2 linear(int order, double a, double b, double c, double d);
  int order() const { return u.order(); }
};

/// f o m, truncated. Throws UsageError if m has a nonzero constant term or orders disagree.
Jet2 jet_compose(const Jet2& f, const MapJet2& m);
/// outer o inner.
MapJet2 jet_compose(const MapJet2& outer, const MapJet2& inner);
/// Inverse germ by fixed-point iteration on the nonlinear part.
/// Throws DegenerateInputError when the linear part is singular.
MapJet2 jet_invert(const MapJet2& m);

}  // namespace godron
