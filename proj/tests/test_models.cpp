#include "engelcr/engel.hpp"
#include "engelcr/models.hpp"

#include <gtest/gtest.h>

#include <complex>
#include <random>

using namespace engelcr;

TEST(Models, ComplexMonomial)
{
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int a = 0; a <= 5; ++a)
    for (int b = 0; b <= 3; ++b) {
      const auto [re, im] = complex_monomial(a, b);
      const double x = u(rng), y = u(rng);
      const std::complex<double> z(x, y);
      const std::complex<double> w = std::pow(z, a) * std::pow(std::conj(z), b);
      EXPECT_NEAR(re.evaluate(Point{x, y, 0, 0}), w.real(), 1e-12);
      EXPECT_NEAR(im.evaluate(Point{x, y, 0, 0}), w.imag(), 1e-12);
    }
}

TEST(Models, CubicAlgebra)
{
  const CubicFields f = cubic_fields();
  const VectorField vx = VectorField::from_polynomials(f.vx), vy = VectorField::from_polynomials(f.vy);
  const VectorField v2 = VectorField::from_polynomials(f.v2), v3 = VectorField::from_polynomials(f.v3);
  const Point p{0.4, -0.7, 0.2, 0.9};
  EXPECT_LT((lie_bracket(vx, vy).value(p) - v2.value(p)).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((lie_bracket(vx, v2).value(p) - v3.value(p)).cwiseAbs().maxCoeff(), 1e-14);
  for (const auto& [a, b] : {std::pair{vy, v2}, std::pair{vx, v3}, std::pair{vy, v3}, std::pair{v2, v3}})
    EXPECT_LT(lie_bracket(a, b).value(p).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Models, NormalFormReducesToCubicGraph)
{
  const GraphSpec g = normal_form_graph({});
  const Point p{0.3, -0.4, 0, 0};
  EXPECT_NEAR(g.f1.evaluate(p), 0.09 + 0.16, 1e-14);
  EXPECT_NEAR(g.f2.evaluate(p), 0.3 * 0.25, 1e-14);
  const EngelStructure e = normal_form_model({});
  const CubicFields f = cubic_fields();
  const Point q{0.2, 0.1, -0.3, 0.5};
  EXPECT_LT((e.x().value(q) - VectorField::from_polynomials(f.vx).value(q)).cwiseAbs().maxCoeff(), 1e-13);
  EXPECT_LT((e.y().value(q) - VectorField::from_polynomials(f.vy).value(q)).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Models, NonRigidGraphRejected)
{
  GraphSpec g = normal_form_graph({});
  g.f1 += Polynomial::variable(2);
  EXPECT_THROW(graph_fields(g), StructuralError);
}

TEST(Models, OdeChartIsNormalizedAndAligned)
{
  const Polynomial q = Polynomial::variable(3);
  const EngelStructure e = ode_normal_coordinates(q * q + Polynomial::variable(1));
  for (const Point& p : {Point{0, 0, 0, 0}, Point{0.5, -0.2, 0.3, 0.7}}) {
    const EngelDiagnostics d = diagnose(e, p);
    EXPECT_TRUE(d.engel);
    EXPECT_TRUE(d.d0_aligned);
    EXPECT_LT(normalization_defect(e.jets(p, 2)).max_abs(), 1e-14);
  }
}

TEST(Models, OdeIntegralCurves)
{
  // y''' = y'': solutions c1 + c2 x + c3 e^x are the x-parametrized integral curves of X
  const EngelStructure e = ode_normal_coordinates(Polynomial::variable(3));
  const VectorField x = e.x();
  const double c1 = 0.3, c2 = -0.7, c3 = 1.2;
  const auto exact = [&](double s) {
    return Point{s, c1 + c2 * s + c3 * std::exp(s), c2 + c3 * std::exp(s), c3 * std::exp(s)};
  };
  for (double s : {0.25, 0.5, 1.0}) {
    const Point end = integrate_flow(x, exact(0.0), s, 200);
    const Point ref = exact(s);
    for (int i = 0; i < 4; ++i)
      EXPECT_NEAR(end[i], ref[i], 1e-6);
  }
}

TEST(Models, RescaledKeepsAlignment)
{
  const EngelStructure e = rescaled(
    cubic(), ScalarField::from_expression([](const Coords& c) { return exp(c[1] + 0.5 * c[2]); }));
  EXPECT_FALSE(e.normalized());
  const EngelDiagnostics d = diagnose(e, {0.1, 0.2, 0.3, 0.4});
  EXPECT_TRUE(d.d0_aligned);
  EXPECT_GT(normalization_defect(e.jets({0.1, 0.2, 0.3, 0.4}, 2)).max_abs(), 1e-3);
}
