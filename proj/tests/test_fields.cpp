#include "engelcr/engel.hpp"
#include "engelcr/models.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace engelcr;

namespace {

std::vector<Point> random_points(int count, unsigned seed, double radius = 1.0)
{
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-radius, radius);
  std::vector<Point> pts;
  for (int i = 0; i < count; ++i)
    pts.push_back({u(rng), u(rng), u(rng), u(rng)});
  return pts;
}

double max_abs(const VectorJet& v)
{
  double m = 0.0;
  for (const Jetd& c : v)
    m = std::max(m, c.max_abs());
  return m;
}

std::vector<EngelStructure> test_structures()
{
  NormalFormCoefficients c;
  c.a1 = 0.2, c.b1 = 0.3, c.b3 = -0.2, c.b8 = 0.1;
  const Polynomial q = Polynomial::variable(3);
  return {cubic(), sheared_cubic(), normal_form_model(c),
          ode_normal_coordinates(0.4 * q * q + Polynomial::variable(0) * Polynomial::variable(2))};
}

} // namespace

TEST(Bracket, CoordinateExamples)
{
  const Point p{0.3, -0.2, 0.5, 1.0};
  const Coords c = seed_coordinates(p, 3);
  const Jetd zero(3, p), one = Jetd::constant(1.0, 3, p);
  // [d_x, x d_y] = d_y
  const VectorJet dx{one, zero, zero, zero};
  const VectorJet xdy{zero, c[0], zero, zero};
  const VectorJet r = bracket(dx, xdy);
  EXPECT_NEAR(r[1].value(), 1.0, 1e-15);
  EXPECT_LT(std::max({r[0].max_abs(), r[2].max_abs(), r[3].max_abs()}), 1e-15);
  // [x d_x, y d_y] = 0, [x d_y, y d_x] = x d_x - y d_y
  const VectorJet xdx{c[0], zero, zero, zero}, ydy{zero, c[1], zero, zero};
  EXPECT_LT(max_abs(bracket(xdx, ydy)), 1e-15);
  const VectorJet ydx{c[1], zero, zero, zero};
  const VectorJet s = bracket(xdy, ydx);
  EXPECT_LT((s[0] - c[0].truncated(2)).max_abs(), 1e-15);
  EXPECT_LT((s[1] + c[1].truncated(2)).max_abs(), 1e-15);
}

TEST(Bracket, FieldAndJetLevelsAgree)
{
  const CubicFields f = cubic_fields();
  const VectorField vx = VectorField::from_polynomials(f.vx), vy = VectorField::from_polynomials(f.vy);
  const VectorField b = lie_bracket(vx, vy);
  for (const Point& p : random_points(5, 21)) {
    const VectorJet direct = bracket(vx(p, 4), vy(p, 4));
    const VectorJet lazy = b(p, 3);
    EXPECT_LT(max_abs(direct - lazy), 1e-13);
    EXPECT_LT((b.value(p) - VectorField::from_polynomials(f.v2).value(p)).cwiseAbs().maxCoeff(),
              1e-14);
    EXPECT_LT(max_abs(bracket(vx(p, 3), vy(p, 3)) + bracket(vy(p, 3), vx(p, 3))), 1e-15);
  }
}

TEST(Frame, JacobiIdentities)
{
  for (const EngelStructure& e : test_structures())
    for (const Point& p : random_points(4, 22, 0.5)) {
      const EngelJets pair = normalized_jets(e, p, 5);
      const FrameJets fr = FrameJets::from_pair(pair.x, pair.y);
      const auto& t = fr.t;
      // 0 = [T_a,[T_2,T_3]] + [T_2,[T_3,T_a]] + [T_3,[T_a,T_2]] for a = x, y
      for (int a : {kX, kY}) {
        const VectorJet j = bracket(t[a], bracket(t[k2], t[k3])) +
                            bracket(t[k2], bracket(t[k3], t[a])) +
                            bracket(t[k3], bracket(t[a], t[k2]));
        EXPECT_LT(values(j).cwiseAbs().maxCoeff(), 1e-9) << e.description;
      }
    }
}

TEST(Frame, CoframeDuality)
{
  for (const EngelStructure& e : test_structures())
    for (const Point& p : random_points(4, 23, 0.5)) {
      const EngelJets pair = normalized_jets(e, p, 6);
      const FrameJets fr = FrameJets::from_pair(pair.x, pair.y);
      const Coframe co = dual_coframe(fr);
      double scale = 1.0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          scale = std::max(scale, fr.t[b][a].max_abs() * co(a, b).max_abs());
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          const Jetd d = co.pair(a, fr.t[b]) - (a == b ? 1.0 : 0.0);
          EXPECT_LT(std::abs(d.value()), 1e-10) << e.description;
          // higher coefficients relative to their magnitude
          EXPECT_LT(d.max_abs() / scale, 1e-10) << e.description;
        }
    }
}

TEST(Frame, StructureFunctionsOfCubic)
{
  const StructureFunctions phi = structure_functions(cubic().frame(), {0.2, 0.4, -0.1, 0.3}, 2);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) {
        const double expected = (a == k2 && b == kX && c == kY) || (a == k3 && b == kX && c == k2)
                                  ? 1.0
                                  : (a == k2 && b == kY && c == kX) || (a == k3 && b == k2 && c == kX)
                                  ? -1.0
                                  : 0.0;
        EXPECT_LT((phi(a, b, c) - expected).max_abs(), 1e-12);
      }
}

TEST(Frame, QuotientBracketIsTensorial)
{
  // for sections A, B of D and any g, the T_2-component of [gA, B] at p is g(p) times that of [A, B]
  const ScalarField g = ScalarField::from_expression(
    [](const Coords& c) { return exp(sin(c[0]) + c[1] * c[2]) * (1.0 + c[3] * c[3]); });
  const ScalarField f1 = ScalarField::from_expression([](const Coords& c) { return cos(c[1]) + 2.0; });
  const ScalarField f2 = ScalarField::from_expression([](const Coords& c) { return c[0] * c[3]; });
  const ScalarField f3 = ScalarField::from_expression([](const Coords& c) { return sin(c[2]); });
  const ScalarField f4 = ScalarField::from_expression([](const Coords& c) { return exp(c[0]); });
  for (const EngelStructure& e : test_structures())
    for (const Point& p : random_points(3, 24, 0.5)) {
      const int n = 3;
      const EngelJets pair = e.jets(p, n + 2);
      const FrameJets fr = FrameJets::from_pair(pair.x, pair.y);
      const Coframe co = dual_coframe(fr);
      const VectorJet a = f1(p, n + 2) * pair.x + f2(p, n + 2) * pair.y;
      const VectorJet b = f3(p, n + 2) * pair.x + f4(p, n + 2) * pair.y;
      const VectorJet ga = g(p, n + 2) * a;
      const double plain = co.pair(k2, bracket(a, b)).value();
      const double scaled = co.pair(k2, bracket(ga, b)).value();
      EXPECT_NEAR(scaled, g(p, 0).value() * plain, 1e-9) << e.description;
      const double det = f1(p, 0).value() * f4(p, 0).value() - f2(p, 0).value() * f3(p, 0).value();
      EXPECT_NEAR(plain, det, 1e-9) << e.description;
    }
}

TEST(Frame, DegenerateCoframeThrows)
{
  const EngelStructure e(VectorField::coordinate(0), VectorField::coordinate(1));
  EXPECT_THROW(dual_coframe(e.frame(), {0, 0, 0, 0}, 1), EngelDegenerate);
}

TEST(Chart, PushForwardOfCubic)
{
  // the sheared cubic at Phi(p) is D Phi applied to the cubic at p
  const CubicFields f = cubic_fields();
  const EngelStructure moved = sheared_cubic();
  for (const Point& p : random_points(5, 25)) {
    const Point q{p[0], p[1], p[2], p[3] + p[0] * p[0] + p[1] * p[2]};
    const Eigen::Vector4d vx = VectorField::from_polynomials(f.vx).value(p);
    Eigen::Matrix4d jac = Eigen::Matrix4d::Identity();
    jac(3, 0) = 2 * p[0];
    jac(3, 1) = p[2];
    jac(3, 2) = p[1];
    EXPECT_LT((moved.x().value(q) - jac * vx).cwiseAbs().maxCoeff(), 1e-13);
  }
}

TEST(Flow, LinearFieldMatchesExponential)
{
  const VectorField v = VectorField::from_polynomials(
    {Polynomial::variable(0), -1.0 * Polynomial::variable(1), Polynomial(1.0), Polynomial(0.0)});
  const Point end = integrate_flow(v, {1.0, 2.0, 0.0, 5.0}, 1.0, 100);
  EXPECT_NEAR(end[0], std::exp(1.0), 1e-8);
  EXPECT_NEAR(end[1], 2.0 * std::exp(-1.0), 1e-8);
  EXPECT_NEAR(end[2], 1.0, 1e-12);
  EXPECT_EQ(end[3], 5.0);
}
