#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "godron/error.hpp"
#include "godron/index.hpp"
#include "godron/locus.hpp"
#include "godron/surface.hpp"

using namespace godron;

namespace {

constexpr double kPi = std::numbers::pi;

MongeJet origin_jet(const SurfaceSpec& spec) { return eval_monge_jet(spec, {0, 0.0, 0.0}, 4); }

int lp_index(double a, double b, double sign) {
  return hyperbonode_index(
      normalize_hyperbonode_frame(origin_jet(catalog("lp_hyperbonode", {{"a", a}, {"b", b}, {"sign", sign}}))));
}

// Winding around a node, on circles shrunk until tracking succeeds.
Rational winding_at_origin(const SurfaceSpec& spec, int k) {
  for (double r = 0.02;; r *= 0.5) {
    try {
      return node_winding_index(spec, {0, 0.0, 0.0}, k, r);
    } catch (const ResolutionError&) {
      if (r < 1e-4) throw;
    }
  }
}

// k lines at alpha * polar angle + j pi / k around the origin.
LineSampler rotating_field(double alpha, int k) {
  return [alpha, k](const Point2& p) {
    std::vector<double> a;
    const double phi = std::atan2(p.t, p.s);
    for (int j = 0; j < k; ++j) a.push_back(alpha * phi + j * kPi / k + 0.1);
    return a;
  };
}

}  // namespace

TEST(HyperbonodeIndex, LandisPlatonova) {
  EXPECT_EQ(lp_index(2.0, 1.0, 1.0), -1);   // sign(1 - ab)
  EXPECT_EQ(lp_index(0.5, 1.0, 1.0), 1);
  EXPECT_EQ(lp_index(2.0, 1.0, -1.0), -1);  // sign(-1 - ab)
  EXPECT_EQ(lp_index(-2.0, 1.0, -1.0), 1);
}

TEST(HyperbonodeIndex, OvsienkoTabachnikov) {
  auto ot = [](double i, double j, double sign) {
    return hyperbonode_index(
        normalize_hyperbonode_frame(origin_jet(catalog("ot_hyperbonode", {{"I", i}, {"J", j}, {"sign", sign}}))));
  };
  EXPECT_EQ(ot(1.0, 2.0, 1.0), 1);    // sign(IJ - 1)
  EXPECT_EQ(ot(0.25, 2.0, 1.0), -1);
  EXPECT_EQ(ot(0.25, 2.0, -1.0), 1);  // sign(IJ + 1)
  EXPECT_EQ(ot(-2.0, 2.0, -1.0), -1);
}

TEST(HyperbonodeIndex, PrenormalSubstitution) {
  const SurfaceSpec spec = catalog("pre_hyperbonode", {{"a", 0.0}, {"b", 0.0}, {"I", 1.0}, {"J", 1.0}});
  EXPECT_EQ(hyperbonode_index(normalize_hyperbonode_frame(origin_jet(spec))), 1);
}

TEST(HyperbonodeIndex, FrameIndependence) {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> u(-2.0, 2.0), pos(0.3, 3.0);
  for (int k = 0; k < 20; ++k) {
    const SurfaceSpec spec = catalog("pre_hyperbonode", {{"a", u(rng)}, {"b", u(rng)}, {"I", u(rng)}, {"J", u(rng)}});
    const MongeJet n = normalize_hyperbonode_frame(origin_jet(spec));
    int want = 0;
    try {
      want = hyperbonode_index(n);
    } catch (const NonGenericError&) {
      continue;
    }
    EXPECT_EQ(hyperbonode_index(change_tangent_frame(n, {0.0, 1.0, 1.0, 0.0})), want);
    EXPECT_EQ(hyperbonode_index(change_tangent_frame(n, {pos(rng), 0.0, 0.0, pos(rng)})), want);
  }
}

TEST(HyperbonodeIndex, DiagonalFrameAgrees) {
  std::mt19937 rng(22);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const double c = std::sqrt(0.5);
  int checked = 0;
  for (int k = 0; k < 30; ++k) {
    const SurfaceSpec spec = catalog("pre_hyperbonode", {{"a", u(rng)}, {"b", u(rng)}, {"I", u(rng)}, {"J", u(rng)}});
    const MongeJet n = normalize_hyperbonode_frame(origin_jet(spec));
    // Rotating by 45 degrees puts the asymptotic lines on y = +-x.
    const MongeJet d = change_tangent_frame(n, {c, -c, c, c});
    EXPECT_NEAR(d.fij(2, 0) + d.fij(0, 2), 0.0, 1e-12);
    EXPECT_NEAR(d.fij(1, 1), 0.0, 1e-12);
    try {
      EXPECT_EQ(hyperbonode_index_diagonal(d), hyperbonode_index(n));
      ++checked;
    } catch (const NonGenericError&) {
    }
  }
  EXPECT_GT(checked, 20);
}

TEST(HyperbonodeIndex, NonGenericThrows) {
  // 4 f11^2 f40 f04 = (2 f11 f31)(2 f11 f13) when ab = 1 with the + sign.
  Jet2 f(4);
  f.set_derivative(1, 1, 1.0);
  f.set_derivative(3, 1, 1.0);
  f.set_derivative(1, 3, 1.0);
  f.set_derivative(4, 0, 1.0);
  f.set_derivative(0, 4, 1.0);
  MongeJet mj;
  mj.f = f;
  mj.frame = FrameKind::linear;
  EXPECT_THROW(hyperbonode_index(mj), NonGenericError);
}

TEST(EllipnodeIndex, Substitutions) {
  auto idx = [](std::map<std::string, double> p) {
    return ellipnode_index(normalize_ellipnode_frame(origin_jet(catalog("pre_ellipnode", p))));
  };
  EXPECT_EQ(idx({{"I", 1.0}, {"J", 1.0}}), Rational(-1, 3));
  EXPECT_EQ(idx({{"c", 1.0}, {"I", 4.0}, {"J", 0.0}}), Rational(1, 3));
}

TEST(EllipnodeIndex, NonGenericRejected) {
  // (a - 3b)(b - 3a) = (I - 3c)(J - 3c): a = b = 0, I = 3c.
  EXPECT_THROW(catalog("pre_ellipnode", {{"c", 1.0}, {"I", 3.0}, {"J", 5.0}}), ValidationError);
  Jet2 f(4);
  f.set_derivative(2, 0, 1.0);
  f.set_derivative(0, 2, 1.0);
  f.set_derivative(2, 2, 1.0);
  f.set_derivative(4, 0, 3.0);
  f.set_derivative(0, 4, 5.0);
  MongeJet mj;
  mj.f = f;
  mj.frame = FrameKind::linear;
  EXPECT_THROW(ellipnode_index(mj), NonGenericError);
}

TEST(RhoSigma, LandisPlatonova) {
  const MongeJet n = normalize_hyperbonode_frame(
      origin_jet(catalog("lp_hyperbonode", {{"a", 2.0}, {"b", 1.0}, {"sign", 1.0}})));
  const RhoSigma rs = invariants_rho_sigma(n);
  EXPECT_NEAR(rs.rho, -1.0, 1e-12);  // 1 - ab
  EXPECT_EQ(rs.sigma, 1);
  const MongeJet m = normalize_hyperbonode_frame(
      origin_jet(catalog("lp_hyperbonode", {{"a", 2.0}, {"b", 1.0}, {"sign", -1.0}})));
  EXPECT_EQ(invariants_rho_sigma(m).sigma, -1);
}

TEST(RhoSigma, SignMatchesIndex) {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 50; ++k) {
    const SurfaceSpec spec = catalog("pre_hyperbonode", {{"alpha", u(rng)}, {"u", u(rng)}, {"v", u(rng)},
                                                         {"a", u(rng)}, {"b", u(rng)}, {"I", u(rng)}, {"J", u(rng)}});
    const MongeJet n = normalize_hyperbonode_frame(origin_jet(spec));
    try {
      const RhoSigma rs = invariants_rho_sigma(n);
      EXPECT_EQ(hyperbonode_index(n), (rs.rho * rs.sigma > 0.0) ? 1 : -1);
    } catch (const NonGenericError&) {
    }
  }
}

TEST(RhoSigma, PositivePrenormalHasIndexOne) {
  const MongeJet n = normalize_hyperbonode_frame(
      origin_jet(catalog("pre_hyperbonode", {{"a", 1.0}, {"b", 0.5}, {"I", 2.0}, {"J", 1.0}})));
  const RhoSigma rs = invariants_rho_sigma(n);
  EXPECT_GT(rs.rho * rs.sigma, 0.0);
  EXPECT_EQ(hyperbonode_index(n), 1);
}

TEST(GodronIndices, ClosedForms) {
  EXPECT_EQ(godron_tau_index(1), Rational(-1, 3));
  EXPECT_EQ(godron_tau_index(-1), Rational(1, 3));
  EXPECT_EQ(godron_asymptotic_index(1), Rational(1, 2));
  EXPECT_EQ(godron_asymptotic_index(-1), Rational(-1, 2));
  // A hyperbolic disk bounded by two positive godrons.
  EXPECT_EQ(godron_asymptotic_index(1) + godron_asymptotic_index(1), Rational(1));
}

TEST(WindingIndex, ConstantFieldIsZero) {
  const LineSampler constant = [](const Point2&) { return std::vector<double>{0.7}; };
  EXPECT_EQ(winding_index(constant, circle_path({0.3, -0.2}, 0.5), 1), Rational(0));
}

TEST(WindingIndex, RotatingFields) {
  for (int k = 1; k <= 3; ++k)
    for (int m = -4; m <= 4; ++m) {
      const Rational want(m, 2 * k);
      EXPECT_EQ(winding_index(rotating_field(want.to_double(), k), circle_path({0.0, 0.0}, 1.0), k), want)
          << "k " << k << " m " << m;
    }
}

TEST(WindingIndex, LoopNotEnclosingSingularity) {
  EXPECT_EQ(winding_index(rotating_field(0.5, 1), circle_path({2.0, 0.0}, 0.5), 1), Rational(0));
}

TEST(WindingIndex, OffLatticeIsAnError) {
  // A smooth field along a path that does not close up turns by 0.3 half-turns.
  const LineSampler field = [](const Point2& p) { return std::vector<double>{0.3 * std::atan2(p.t, p.s)}; };
  const PlanePath half = [](double u) { return Point2{std::cos(kPi * u), std::sin(kPi * u)}; };
  EXPECT_THROW(winding_index(field, half, 1), ResolutionError);
}

TEST(WindingIndex, JumpIsAnError) {
  // atan2 jumps by 0.48 pi across the negative axis; no refinement makes that step small.
  EXPECT_THROW(winding_index(rotating_field(0.24, 1), circle_path({0.0, 0.0}, 1.0), 1), ResolutionError);
}

TEST(WindingIndex, WrongLineCountIsAnError) {
  EXPECT_THROW(winding_index(rotating_field(0.5, 2), circle_path({0.0, 0.0}, 1.0), 3), ResolutionError);
}

TEST(WindingIndex, SaddleWithQuarticNode) {
  const SurfaceSpec spec = monge_patch("xy_quartic", {{1, 1, 1.0}, {4, 0, 1.0}, {0, 4, 1.0}});
  EXPECT_EQ(winding_at_origin(spec, 1), Rational(1));
}

TEST(WindingIndex, NearlyDegenerateHyperbonode) {
  // ab + 1 = 0.038: the zero line of W sweeps two half-turns within about 0.01 rad of the loop.
  const SurfaceSpec spec = catalog("lp_hyperbonode", {{"a", -0.686939}, {"b", 1.40094}, {"sign", -1.0}});
  CharPoint n;
  n.kind = CharKind::hyperbonode;
  attach_node_index(spec, n);
  ASSERT_EQ(n.index, Rational(-1));
  for (double r : {0.02, 0.005, 0.001}) EXPECT_EQ(node_winding_index(spec, {0, 0.0, 0.0}, 1, r), Rational(-1)) << r;
  // Without the form the half-turns alias to no turn at all.
  EXPECT_EQ(winding_index(cubic_form_lines(spec, 0), circle_path({0.0, 0.0}, 0.005), 1), Rational(0));
}

TEST(WindingIndex, PrenormalEllipnode) {
  EXPECT_EQ(winding_at_origin(catalog("pre_ellipnode", {{"I", 1.0}, {"J", 1.0}}), 3), Rational(-1, 3));
}

TEST(BoundaryWinding, VectorFieldOnDisk) {
  // The field d/dx on the unit disk is tangent to the boundary at (0, +-1) and transverse
  // elsewhere. Each point is closed off by a small arc through the interior, turning
  // counterclockwise.
  const LineSampler dx = [](const Point2&) { return std::vector<double>{0.0}; };
  Rational total;
  for (double side : {1.0, -1.0}) {
    const double eps = 0.05;
    const Point2 c{0.0, side};
    const double lift = std::asin(eps / 2.0);
    // Arc points c + eps (cos th, sin th) meet the unit circle where sin th = -side eps / 2.
    const double th_a = side > 0 ? kPi + lift : lift;
    const double th_b = side > 0 ? 2 * kPi - lift : kPi - lift;
    BoundaryArc arc;
    arc.path = [=](double u) {
      const double th = th_a + u * (th_b - th_a);
      return Point2{c.s + eps * std::cos(th), c.t + eps * std::sin(th)};
    };
    const Point2 a = arc.path(0.0), b = arc.path(1.0);
    EXPECT_NEAR(std::hypot(a.s, a.t), 1.0, 1e-12);
    EXPECT_NEAR(std::hypot(b.s, b.t), 1.0, 1e-12);
    arc.tangent_a = std::atan2(a.t, a.s) + kPi / 2;
    arc.tangent_b = std::atan2(b.t, b.s) + kPi / 2;
    arc.mode = Trivialization::transverse;
    const Rational r = boundary_winding_index(dx, arc, 1);
    EXPECT_EQ(r, Rational(1, 2)) << "side " << side;
    total += r;
  }
  EXPECT_EQ(total, Rational(1));
}

TEST(BoundaryWinding, PlatonovaGodrons) {
  for (double rho : {2.0, 0.5}) {
    const SurfaceSpec spec = catalog("platonova", {{"rho", rho}});
    const int sign = rho > 1.0 ? 1 : -1;
    EXPECT_EQ(godron_boundary_index(spec, {0, 0.0, 0.0}, GodronField::cubic_form, 0.02), Rational(-sign, 3)) << rho;
    EXPECT_EQ(godron_boundary_index(spec, {0, 0.0, 0.0}, GodronField::asymptotic, 0.02), Rational(sign, 2)) << rho;
  }
}

TEST(IndexAgreement, RandomNodeFixtures) {
  std::mt19937 rng(24);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  int hyper = 0, ellip = 0;
  for (int k = 0; k < 12; ++k) {
    const SurfaceSpec h = catalog("pre_hyperbonode", {{"alpha", u(rng)}, {"u", u(rng)}, {"v", u(rng)},
                                                      {"a", u(rng)}, {"b", u(rng)}, {"I", u(rng)}, {"J", u(rng)}});
    CharPoint hn;
    hn.kind = CharKind::hyperbonode;
    try {
      attach_node_index(h, hn);
    } catch (const NonGenericError&) {
      continue;
    }
    EXPECT_EQ(winding_at_origin(h, 1), hn.index);
    ++hyper;
  }
  for (int k = 0; k < 12; ++k) {
    const SurfaceSpec e = catalog("pre_ellipnode", {{"alpha", u(rng)}, {"a", u(rng)}, {"b", u(rng)}, {"c", u(rng)},
                                                    {"I", u(rng)}, {"J", u(rng)}});
    CharPoint en;
    en.kind = CharKind::ellipnode;
    try {
      attach_node_index(e, en);
    } catch (const NonGenericError&) {
      continue;
    }
    EXPECT_EQ(winding_at_origin(e, 3), en.index);
    ++ellip;
  }
  EXPECT_GE(hyper, 10);
  EXPECT_GE(ellip, 10);
}
