#include "godron/jet.hpp"

#include "godron/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace godron {

namespace {

constexpr double kFactorial[] = {1, 1, 2, 6, 24, 120, 720};

void check_order(int order) {
  if (order < 0 || order > kMaxJetOrder) {
    throw UsageError("jet order must lie in 0.." + std::to_string(kMaxJetOrder) + ", got " +
                     std::to_string(order));
  }
}

void check_same_order(const Jet2& a, const Jet2& b, const char* what) {
  if (a.order() != b.order()) {
    throw UsageError(std::string(what) + ": mismatched jet orders " + std::to_string(a.order()) +
                     " and " + std::to_string(b.order()));
  }
}

// Sum_k taylor[k] * (a - a0)^k by Horner's rule; taylor has order+1 entries.
template <typename Coefficients>
Jet2 apply_series(const Jet2& a, const Coefficients& taylor) {
  Jet2 delta = a;
  delta.coeff(0, 0) = 0.0;
  Jet2 result = Jet2::constant(a.order(), taylor[a.order()]);
  for (int k = a.order() - 1; k >= 0; --k) {
    result = result * delta;
    result.coeff(0, 0) += taylor[k];
  }
  return result;
}

}  // namespace

Jet2::Jet2(int order) : order_(order) { check_order(order); }

Jet2 Jet2::constant(int order, double value) {
  Jet2 j(order);
  j.c_[0] = value;
  return j;
}

Jet2 Jet2::variable_x(int order, double x0) {
  Jet2 j = constant(order, x0);
  if (order >= 1) j.coeff(1, 0) = 1.0;
  return j;
}

Jet2 Jet2::variable_y(int order, double y0) {
  Jet2 j = constant(order, y0);
  if (order >= 1) j.coeff(0, 1) = 1.0;
  return j;
}

double Jet2::derivative(int i, int j) const {
  if (i + j > order_) return 0.0;
  return coeff(i, j) * kFactorial[i] * kFactorial[j];
}

void Jet2::set_derivative(int i, int j, double f_ij) {
  if (i + j > order_) throw UsageError("set_derivative beyond jet order");
  coeff(i, j) = f_ij / (kFactorial[i] * kFactorial[j]);
}

double Jet2::evaluate(double dx, double dy) const {
  double total = 0.0;
  double xp = 1.0;
  for (int i = 0; i <= order_; ++i) {
    double yp = 1.0;
    for (int j = 0; i + j <= order_; ++j) {
      total += coeff(i, j) * xp * yp;
      yp *= dy;
    }
    xp *= dx;
  }
  return total;
}

Jet2 Jet2::homogeneous_part(int degree) const {
  Jet2 out(order_);
  if (degree < 0 || degree > order_) return out;
  for (int j = 0; j <= degree; ++j) out.coeff(degree - j, j) = coeff(degree - j, j);
  return out;
}

Jet2 Jet2::truncated(int order) const {
  Jet2 out(order);
  const int keep = std::min(order, order_);
  for (int d = 0; d <= keep; ++d)
    for (int j = 0; j <= d; ++j) out.coeff(d - j, j) = coeff(d - j, j);
  return out;
}

double Jet2::max_abs() const {
  double m = 0.0;
  for (std::size_t k = 0; k < index(0, order_) + 1; ++k) m = std::max(m, std::abs(c_[k]));
  return m;
}

Jet2& Jet2::operator+=(const Jet2& o) {
  check_same_order(*this, o, "jet addition");
  for (std::size_t k = 0; k < kCapacity; ++k) c_[k] += o.c_[k];
  return *this;
}

Jet2& Jet2::operator-=(const Jet2& o) {
  check_same_order(*this, o, "jet subtraction");
  for (std::size_t k = 0; k < kCapacity; ++k) c_[k] -= o.c_[k];
  return *this;
}

Jet2& Jet2::operator*=(double s) {
  for (double& c : c_) c *= s;
  return *this;
}

Jet2& Jet2::operator*=(const Jet2& o) { return *this = *this * o; }

Jet2 Jet2::operator-() const {
  Jet2 out = *this;
  for (double& c : out.c_) c = -c;
  return out;
}

Jet2 operator*(const Jet2& a, const Jet2& b) {
  check_same_order(a, b, "jet_mul");
  const int n = a.order_;
  Jet2 out(n);
  for (int d1 = 0; d1 <= n; ++d1) {
    const std::size_t base1 = Jet2::index(d1, 0);
    for (int j1 = 0; j1 <= d1; ++j1) {
      const double ca = a.c_[base1 + j1];
      if (ca == 0.0) continue;
      for (int d2 = 0; d1 + d2 <= n; ++d2) {
        const std::size_t base2 = Jet2::index(d2, 0);
        const std::size_t base_out = Jet2::index(d1 + d2, 0) + j1;
        for (int j2 = 0; j2 <= d2; ++j2) out.c_[base_out + j2] += ca * b.c_[base2 + j2];
      }
    }
  }
  return out;
}

Jet2 operator/(const Jet2& a, const Jet2& b) { return a * reciprocal(b); }

Jet2 jet_mul(const Jet2& a, const Jet2& b) { return a * b; }

Jet2 reciprocal(const Jet2& a) {
  const double a0 = a.value();
  if (a0 == 0.0) throw DegenerateInputError("reciprocal of a jet with zero constant term");
  std::array<double, kMaxJetOrder + 1> t{};
  double p = 1.0 / a0;
  for (int k = 0; k <= a.order(); ++k) {
    t[k] = (k % 2 == 0 ? p : -p);
    p /= a0;
  }
  return apply_series(a, t);
}

Jet2 pow(const Jet2& a, double exponent) {
  const double a0 = a.value();
  if (a0 <= 0.0) throw DegenerateInputError("real power of a jet with non-positive constant term");
  std::array<double, kMaxJetOrder + 1> t{};
  double binom = 1.0;
  for (int k = 0; k <= a.order(); ++k) {
    t[k] = binom * std::pow(a0, exponent - k);
    binom *= (exponent - k) / (k + 1);
  }
  return apply_series(a, t);
}

Jet2 sqrt(const Jet2& a) { return pow(a, 0.5); }

Jet2 exp(const Jet2& a) {
  std::array<double, kMaxJetOrder + 1> t{};
  const double e = std::exp(a.value());
  for (int k = 0; k <= a.order(); ++k) t[k] = e / kFactorial[k];
  return apply_series(a, t);
}

Jet2 sin(const Jet2& a) {
  std::array<double, kMaxJetOrder + 1> t{};
  const double s = std::sin(a.value());
  const double c = std::cos(a.value());
  const double cycle[] = {s, c, -s, -c};
  for (int k = 0; k <= a.order(); ++k) t[k] = cycle[k % 4] / kFactorial[k];
  return apply_series(a, t);
}

Jet2 cos(const Jet2& a) {
  std::array<double, kMaxJetOrder + 1> t{};
  const double s = std::sin(a.value());
  const double c = std::cos(a.value());
  const double cycle[] = {c, -s, -c, s};
  for (int k = 0; k <= a.order(); ++k) t[k] = cycle[k % 4] / kFactorial[k];
  return apply_series(a, t);
}

Jet2 tan(const Jet2& a) { return sin(a) / cos(a); }

MapJet2 MapJet2::identity(int order) { return {Jet2::variable_x(order), Jet2::variable_y(order)}; }

MapJet2 MapJet2::linear(int order, double a, double b, double c, double d) {
  MapJet2 m{Jet2(order), Jet2(order)};
  if (order >= 1) {
    m.u.coeff(1, 0) = a;
    m.u.coeff(0, 1) = b;
    m.v.coeff(1, 0) = c;
    m.v.coeff(0, 1) = d;
  }
  return m;
}

Jet2 jet_compose(const Jet2& f, const MapJet2& m) {
  check_same_order(f, m.u, "jet_compose");
  check_same_order(f, m.v, "jet_compose");
  const double scale = 1.0 + std::max(m.u.max_abs(), m.v.max_abs());
  if (std::abs(m.u.value()) > 1e-14 * scale || std::abs(m.v.value()) > 1e-14 * scale) {
    throw UsageError("jet_compose: inner map must have zero constant terms");
  }
  MapJet2 inner = m;
  inner.u.coeff(0, 0) = 0.0;
  inner.v.coeff(0, 0) = 0.0;

  const int n = f.order();
  // Horner in u over polynomials in v: f = sum_i u^i (sum_j c_ij v^j).
  Jet2 result(n);
  for (int i = n; i >= 0; --i) {
    Jet2 column = Jet2::constant(n, f.coeff(i, n - i));
    for (int j = n - i - 1; j >= 0; --j) {
      column = column * inner.v;
      column.coeff(0, 0) += f.coeff(i, j);
    }
    result = result * inner.u + column;
  }
  return result;
}

MapJet2 jet_compose(const MapJet2& outer, const MapJet2& inner) {
  return {jet_compose(outer.u, inner), jet_compose(outer.v, inner)};
}

MapJet2 jet_invert(const MapJet2& m) {
  const int n = m.order();
  if (n < 1) throw UsageError("jet_invert needs order >= 1");
  const double a = m.u.coeff(1, 0), b = m.u.coeff(0, 1);
  const double c = m.v.coeff(1, 0), d = m.v.coeff(0, 1);
  const double det = a * d - b * c;
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  if (!(std::abs(det) > 1e-13 * scale * scale)) {
    throw DegenerateInputError("jet_invert: singular linear part");
  }
  const double ia = d / det, ib = -b / det, ic = -c / det, id = a / det;

  MapJet2 g = MapJet2::linear(n, ia, ib, ic, id);
  const MapJet2 id_map = MapJet2::identity(n);
  // g <- g - A^{-1} (m o g - id); each pass fixes one more order.
  for (int pass = 1; pass < n; ++pass) {
    const MapJet2 mg = jet_compose(m, g);
    const Jet2 ru = mg.u - id_map.u;
    const Jet2 rv = mg.v - id_map.v;
    g.u -= ia * ru + ib * rv;
    g.v -= ic * ru + id * rv;
  }
  return g;
}

}  // namespace godron
