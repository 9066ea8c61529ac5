#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "godron/error.hpp"
#include "godron/forms.hpp"
#include "godron/locus.hpp"
#include "godron/surface.hpp"

using namespace godron;

namespace {

constexpr double kPi = std::numbers::pi;

void expect_only(const MongeJet& mj, std::initializer_list<std::tuple<int, int, double>> nonzero, double tol) {
  for (int d = 2; d <= 4; ++d) {
    for (int i = 0; i <= d; ++i) {
      double want = 0.0;
      for (auto [a, b, v] : nonzero)
        if (a == i && b == d - i) want = v;
      EXPECT_NEAR(mj.fij(i, d - i), want, tol) << "f" << i << d - i;
    }
  }
}

double frame_error(const MongeJet& mj) {
  return std::max({std::abs(dot(mj.e1, mj.e1) - 1), std::abs(dot(mj.e2, mj.e2) - 1), std::abs(dot(mj.n, mj.n) - 1),
                   std::abs(dot(mj.e1, mj.e2)), std::abs(dot(mj.e1, mj.n)), std::abs(dot(mj.e2, mj.n))});
}

}  // namespace

TEST(MongeJet, PlatonovaAtOrigin) {
  for (double rho : {2.0, 0.5, -1.0}) {
    const SurfaceSpec spec = catalog("platonova", {{"rho", rho}});
    const MongeJet mj = eval_monge_jet(spec, {0, 0.0, 0.0}, 4);
    expect_only(mj, {{0, 2, 1.0}, {2, 1, -2.0}, {4, 0, 12.0 * rho}}, 1e-12);
    EXPECT_LE(frame_error(mj), 1e-12);
    EXPECT_NEAR(mj.f.coeff(0, 0), 0.0, 1e-15);
    EXPECT_NEAR(mj.f.coeff(1, 0), 0.0, 1e-15);
    EXPECT_NEAR(mj.f.coeff(0, 1), 0.0, 1e-15);
  }
}

TEST(MongeJet, SaddleIsItsOwnMongeForm) {
  const SurfaceSpec spec = monge_patch("xy", {{1, 1, 1.0}});
  expect_only(eval_monge_jet(spec, {0, 0.0, 0.0}, 4), {{1, 1, 1.0}}, 1e-12);
}

TEST(MongeJet, TorusOuterEquatorCurvatures) {
  const double R = 2.0, r = 1.0;
  const SurfaceSpec spec = catalog("torus", {{"R", R}, {"r", r}});
  const MongeJet mj = eval_monge_jet(spec, {0, 0.3, 0.0}, 4);
  EXPECT_NEAR(mj.fij(1, 1), 0.0, 1e-12);
  std::vector<double> k{mj.fij(2, 0), mj.fij(0, 2)};
  std::sort(k.begin(), k.end());
  // Outward normal: both principal curvatures negative at the outer equator.
  EXPECT_NEAR(k[0], -1.0 / r, 1e-12);
  EXPECT_NEAR(k[1], -1.0 / (R + r), 1e-12);
  EXPECT_LE(frame_error(mj), 1e-12);
}

TEST(MongeJet, PatchReproducesCoefficients) {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Monomial> poly;
    for (int d = 2; d <= 4; ++d)
      for (int i = 0; i <= d; ++i) poly.push_back({i, d - i, u(rng)});
    const MongeJet mj = eval_monge_jet(monge_patch("random", poly), {0, 0.0, 0.0}, 4);
    for (const auto& m : poly) EXPECT_NEAR(mj.f.coeff(m.i, m.j), m.c, 1e-12);
  }
}

TEST(MongeJet, FrameCovariance) {
  // Shearing the parametrization changes the initial tangent basis X_s, so the
  // orthonormal frame comes out rotated. Heights must follow the induced substitution.
  const SurfaceSpec spec = catalog("perturbed_torus", {{"eps", 0.05}});
  SurfaceSpec sheared = spec;
  sheared.evaluator = [ev = spec.evaluator](int chart, const Jet2& s, const Jet2& t) {
    return ev(chart, s + 0.6 * t, t);
  };
  for (const ChartPoint p : {ChartPoint{0, 1.1, 0.4}, ChartPoint{0, 4.0, 2.5}}) {
    const MongeJet a = eval_monge_jet(spec, p, 4);
    const MongeJet b = eval_monge_jet(sheared, {0, p.s - 0.6 * p.t, p.t}, 4);
    EXPECT_LE(norm(a.base_point - b.base_point), 1e-12);
    EXPECT_LE(norm(a.n - b.n), 1e-12);
    const double c = dot(b.e1, a.e1), s = dot(b.e1, a.e2);
    const Jet2 expected = jet_compose(a.f, MapJet2::linear(4, c, -s, s, c));
    for (int d = 2; d <= 4; ++d)
      for (int i = 0; i <= d; ++i) EXPECT_NEAR(b.f.coeff(i, d - i), expected.coeff(i, d - i), 1e-9);
  }
}

TEST(MongeJet, ImmersionFailureIsDegenerate) {
  const SurfaceSpec spec = catalog("radial_sphere", {{"eps", 0.3}});
  SurfaceSpec broken = spec;
  broken.evaluator = [](int, const Jet2& s, const Jet2& t) {
    const Jet2 z = s * s + t * t;
    return std::array<Jet2, 3>{s * s, t * s * s, z};
  };
  EXPECT_THROW(eval_monge_jet(broken, {0, 0.0, 0.0}, 4), DegenerateInputError);
}

TEST(Catalog, PlatonovaPolynomial) {
  const SurfaceSpec spec = catalog("platonova", {{"rho", 2.0}});
  ASSERT_EQ(spec.kind, SurfaceKind::monge_patch);
  const double x = 0.13, y = -0.07;
  EXPECT_NEAR(spec.position({0, x, y}).z, y * y / 2 - x * x * y + std::pow(x, 4), 1e-15);
}

TEST(Catalog, GenericityViolationsNameTheCondition) {
  auto message = [](const std::string& name, const std::map<std::string, double>& p) {
    try {
      catalog(name, p);
    } catch (const ValidationError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message("platonova", {{"rho", 1.0}}).find("rho != 1"), std::string::npos);
  EXPECT_NE(message("lp_hyperbonode", {{"a", 1.0}, {"b", 1.0}}).find("ab != 1"), std::string::npos);
  EXPECT_NE(message("lp_hyperbonode", {{"a", 1.0}, {"b", -1.0}}).find("ab != -1"), std::string::npos);
  EXPECT_NE(message("ot_hyperbonode", {{"I", 2.0}, {"J", 0.5}}).find("IJ != 1"), std::string::npos);
  EXPECT_FALSE(message("pre_hyperbonode", {{"a", 1.0}, {"b", 1.0}, {"I", 1.0}, {"J", 1.0}}).empty());
  EXPECT_FALSE(message("pre_ellipnode", {{"a", 0.0}, {"b", 0.0}, {"c", 0.0}, {"I", 0.0}, {"J", 0.0}}).empty());
  EXPECT_THROW(catalog("klein_bottle", {}), ValidationError);
  EXPECT_THROW(catalog("platonova", {{"bogus", 1.0}}), ValidationError);
}

TEST(Catalog, PreEllipnodePolynomial) {
  const SurfaceSpec spec = catalog("pre_ellipnode", {{"a", 0.0}, {"b", 0.0}, {"c", 0.0}, {"I", 1.0}, {"J", 1.0}});
  const double x = 0.2, y = 0.3;
  EXPECT_NEAR(spec.position({0, x, y}).z, 0.5 * (x * x + y * y) + (std::pow(x, 4) + std::pow(y, 4)) / 24, 1e-15);
}

TEST(Catalog, ChartTransitionsAgree) {
  const SurfaceSpec spec = catalog("radial_sphere", {{"eps", 0.3}, {"island", 0.65}});
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(-kPi / 4, kPi / 4);
  for (int chart = 0; chart < 6; ++chart) {
    for (int k = 0; k < 20; ++k) {
      // Points beyond the chart edge are re-expressed in the neighbouring chart.
      const ChartPoint p{chart, u(rng) * 1.3, u(rng) * 1.3};
      const ChartPoint c = spec.canonical(p);
      EXPECT_LE(norm(spec.position(p) - spec.position(c)), 1e-9);
    }
  }
  const SurfaceSpec torus = catalog("perturbed_torus", {{"eps", 0.05}});
  EXPECT_LE(norm(torus.position({0, 0.4, 0.2}) - torus.position({0, 0.4 + 2 * kPi, 0.2 - 2 * kPi})), 1e-12);
}

TEST(NormalizeHyperbonode, FixedPointAndLpAxes) {
  const SurfaceSpec lp = catalog("lp_hyperbonode", {{"a", 2.0}, {"b", 1.0}});
  const MongeJet mj = eval_monge_jet(lp, {0, 0.0, 0.0}, 4);
  const MongeJet nj = normalize_hyperbonode_frame(mj);
  EXPECT_EQ(nj.fij(2, 0), 0.0);
  EXPECT_EQ(nj.fij(0, 2), 0.0);
  EXPECT_NEAR(nj.fij(1, 1), 1.0, 1e-12);
  // Axes unchanged up to scaling: the change of frame is diagonal.
  EXPECT_NEAR(nj.linear_change[1], 0.0, 1e-12);
  EXPECT_NEAR(nj.linear_change[2], 0.0, 1e-12);
}

TEST(NormalizeHyperbonode, RotatesSaddleByFortyFive) {
  const SurfaceSpec spec = monge_patch("saddle", {{2, 0, 0.5}, {0, 2, -0.5}, {4, 0, 0.1}});
  const MongeJet nj = normalize_hyperbonode_frame(eval_monge_jet(spec, {0, 0.0, 0.0}, 4));
  EXPECT_EQ(nj.fij(2, 0), 0.0);
  EXPECT_EQ(nj.fij(0, 2), 0.0);
  EXPECT_NEAR(nj.fij(1, 1), 1.0, 1e-12);
  const auto& a = nj.linear_change;
  // Columns of the change are the asymptotic directions y = +-x.
  EXPECT_NEAR(std::abs(a[0]), std::abs(a[2]), 1e-12);
  EXPECT_NEAR(std::abs(a[1]), std::abs(a[3]), 1e-12);
  EXPECT_EQ(classify_point(nj), PointClass::hyperbolic);
}

TEST(NormalizeHyperbonode, RandomHyperbolicPoints) {
  const SurfaceSpec spec = catalog("perturbed_torus", {{"eps", 0.05}});
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> u(0.0, 2 * kPi), v(2.0, 4.2);  // inner side: hyperbolic
  for (int k = 0; k < 20; ++k) {
    const MongeJet mj = eval_monge_jet(spec, {0, u(rng), v(rng)}, 4);
    ASSERT_EQ(classify_point(mj), PointClass::hyperbolic);
    const MongeJet nj = normalize_hyperbonode_frame(mj);
    EXPECT_EQ(nj.fij(2, 0), 0.0);
    EXPECT_EQ(nj.fij(0, 2), 0.0);
    EXPECT_NE(nj.fij(1, 1), 0.0);
    EXPECT_EQ(classify_point(nj), PointClass::hyperbolic);
  }
}

TEST(NormalizeHyperbonode, RejectsEllipticInput) {
  const SurfaceSpec spec = monge_patch("bowl", {{2, 0, 1.0}, {0, 2, 1.0}});
  EXPECT_THROW(normalize_hyperbonode_frame(eval_monge_jet(spec, {0, 0.0, 0.0}, 4)), ClassificationError);
}

TEST(NormalizeEllipnode, FixedPoint) {
  const SurfaceSpec spec = catalog("pre_ellipnode", {{"I", 1.0}, {"J", 1.0}});
  const MongeJet nj = normalize_ellipnode_frame(eval_monge_jet(spec, {0, 0.0, 0.0}, 4));
  EXPECT_NEAR(nj.fij(2, 0), nj.fij(0, 2), 1e-9);
  EXPECT_NEAR(nj.fij(1, 1), 0.0, 1e-9);
  for (int i = 0; i <= 3; ++i) EXPECT_NEAR(nj.fij(i, 3 - i), 0.0, 1e-9);
  EXPECT_NEAR(nj.f.coeff(4, 0) / nj.f.coeff(2, 0), (1.0 / 24) / 0.5, 1e-9);
  EXPECT_NEAR(nj.f.coeff(0, 4) / nj.f.coeff(2, 0), (1.0 / 24) / 0.5, 1e-9);
}

TEST(NormalizeEllipnode, AbsorbsCubicDivisibleByQ) {
  // z = (1/2)(x^2 + y^2)(1 + 2x): C = Q L with L = 2x, quartic becomes -Q L^2 = -2x^2(x^2 + y^2).
  const SurfaceSpec spec = monge_patch("node", {{2, 0, 0.5}, {0, 2, 0.5}, {3, 0, 1.0}, {1, 2, 1.0}});
  const MongeJet nj = normalize_ellipnode_frame(eval_monge_jet(spec, {0, 0.0, 0.0}, 4));
  const double alpha = nj.fij(2, 0);
  EXPECT_NEAR(nj.fij(0, 2), alpha, 1e-9);
  for (int i = 0; i <= 3; ++i) EXPECT_NEAR(nj.fij(i, 3 - i), 0.0, 1e-9);
  // Normalize the quartic by the scale of Q: alpha / 2 plays the role of 1/2.
  const double s = 1.0 / alpha;
  EXPECT_NEAR(nj.f.coeff(4, 0) * s * s, -2.0, 1e-9);
  EXPECT_NEAR(nj.f.coeff(2, 2) * s * s, -2.0, 1e-9);
  EXPECT_NEAR(nj.f.coeff(0, 4) * s * s, 0.0, 1e-9);
  EXPECT_NEAR(nj.f.coeff(3, 1), 0.0, 1e-9);
  EXPECT_NEAR(nj.f.coeff(1, 3), 0.0, 1e-9);
}

TEST(NormalizeEllipnode, DetectsScale) {
  const SurfaceSpec spec = monge_patch("bowl", {{2, 0, 1.0}, {0, 2, 1.0}, {4, 0, 1.0}});
  const MongeJet nj = normalize_ellipnode_frame(eval_monge_jet(spec, {0, 0.0, 0.0}, 4));
  for (int i = 0; i <= 3; ++i) EXPECT_NEAR(nj.fij(i, 3 - i), 0.0, 1e-12);
  EXPECT_NEAR(nj.fij(1, 1), 0.0, 1e-12);
  EXPECT_NEAR(nj.fij(2, 0), nj.fij(0, 2), 1e-12);
  EXPECT_GT(std::abs(nj.f.coeff(4, 0)) + std::abs(nj.f.coeff(0, 4)), 0.1);
}

TEST(NormalizeEllipnode, RejectsNonNode) {
  const SurfaceSpec spec = monge_patch("bump", {{2, 0, 0.5}, {0, 2, 0.5}, {3, 0, 1.0}});
  EXPECT_THROW(normalize_ellipnode_frame(eval_monge_jet(spec, {0, 0.0, 0.0}, 4)), ValidationError);
  const SurfaceSpec saddle = monge_patch("xy", {{1, 1, 1.0}});
  EXPECT_THROW(normalize_ellipnode_frame(eval_monge_jet(saddle, {0, 0.0, 0.0}, 4)), ClassificationError);
}
