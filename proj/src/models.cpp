#include "engelcr/models.hpp"

#include <complex>

namespace engelcr {

namespace {

const Polynomial var_x = Polynomial::variable(0);
const Polynomial var_y = Polynomial::variable(1);
const Polynomial var_u1 = Polynomial::variable(2);
const Polynomial var_u2 = Polynomial::variable(3);

VectorExpr expression(const std::array<Polynomial, 4>& v)
{
  return [v](const Coords& c) {
    return VectorJet{v[0].evaluate(c), v[1].evaluate(c), v[2].evaluate(c), v[3].evaluate(c)};
  };
}

void require_rigid(const Polynomial& f, const char* name)
{
  for (const auto& [m, c] : f.terms())
    if (m[2] != 0 || m[3] != 0)
      throw StructuralError(std::string(name) + " must depend on x and y only (rigid graph)");
}

double binomial(int n, int k)
{
  double r = 1.0;
  for (int i = 1; i <= k; ++i)
    r = r * (n - k + i) / i;
  return r;
}

} // namespace

CubicFields cubic_fields()
{
  CubicFields f;
  f.vx = {Polynomial(0.5), Polynomial(0.0), var_y, var_x * var_y};
  f.vy = {Polynomial(0.0), Polynomial(-0.5), var_x, 1.5 * var_x * var_x + 0.5 * var_y * var_y};
  f.v2 = {Polynomial(0.0), Polynomial(0.0), Polynomial(1.0), 2.0 * var_x};
  f.v3 = {Polynomial(0.0), Polynomial(0.0), Polynomial(0.0), Polynomial(1.0)};
  return f;
}

EngelStructure cubic()
{
  const CubicFields f = cubic_fields();
  EngelStructure e(VectorField::from_polynomials(f.vx), VectorField::from_polynomials(f.vy), true);
  e.description = "cubic";
  return e;
}

std::pair<VectorField, VectorField> graph_fields(const GraphSpec& g)
{
  require_rigid(g.f1, "F1");
  require_rigid(g.f2, "F2");
  const std::array<Polynomial, 4> u{Polynomial(1.0), Polynomial(0.0), g.f1.derivative(1),
                                    g.f2.derivative(1)};
  const std::array<Polynomial, 4> v{Polynomial(0.0), Polynomial(1.0), -1.0 * g.f1.derivative(0),
                                    -1.0 * g.f2.derivative(0)};
  return {VectorField::from_polynomials(u), VectorField::from_polynomials(v)};
}

EngelStructure graph_to_engel(const GraphSpec& g)
{
  const auto [u, v] = graph_fields(g);
  EngelStructure e = align_d0(u, v);
  e.description = "graph";
  const EngelDiagnostics d = diagnose(e, Point{0, 0, 0, 0});
  if (!d.engel)
    throw EngelDegenerate(Point{0, 0, 0, 0}, "graph Engel determinant " +
                                                 std::to_string(d.engel_determinant));
  return e;
}

std::pair<Polynomial, Polynomial> complex_monomial(int a, int b)
{
  // z^a zbar^b = sum C(a,k) C(b,l) x^(a-k+b-l) (i y)^k (-i y)^l
  Polynomial re, im;
  for (int k = 0; k <= a; ++k)
    for (int l = 0; l <= b; ++l) {
      const std::complex<double> phase =
        std::pow(std::complex<double>(0, 1), k) * std::pow(std::complex<double>(0, -1), l);
      const double c = binomial(a, k) * binomial(b, l);
      const MultiIndex m{a - k + b - l, k + l, 0, 0};
      re.add_term(m, std::round(phase.real()) * c);
      im.add_term(m, std::round(phase.imag()) * c);
    }
  return {re, im};
}

GraphSpec normal_form_graph(const NormalFormCoefficients& c)
{
  const auto re = [](int a, int b) { return complex_monomial(a, b).first; };
  const auto im = [](int a, int b) { return complex_monomial(a, b).second; };
  GraphSpec g;
  g.f1 = re(1, 1) + c.a1 * re(2, 3) + c.a2 * im(2, 3);
  g.f2 = re(2, 1) + c.b1 * re(4, 1) + c.b2 * re(2, 3) + c.b3 * im(2, 3) + c.b4 * re(5, 1) +
         c.b5 * im(5, 1) + c.b6 * re(4, 2) + c.b7 * im(4, 2) + c.b8 * re(3, 3);
  return g;
}

EngelStructure normal_form_model(const NormalFormCoefficients& c)
{
  EngelStructure e = graph_to_engel(normal_form_graph(c));
  e.description = "normal_form";
  return e;
}

EngelStructure ode_normal_coordinates(const Polynomial& b, const ScalarField& scale)
{
  // chart (x, y, p, q)
  const std::array<Polynomial, 4> x{Polynomial(1.0), var_u1, var_u2, b};
  const std::array<Polynomial, 4> y{Polynomial(0.0), Polynomial(0.0), Polynomial(0.0),
                                    Polynomial(1.0)};
  EngelStructure e(scaled(scale, VectorField::from_polynomials(x)),
                   scaled(scale, VectorField::from_polynomials(y)), false);
  e.description = "ode";
  return e;
}

EngelStructure ode_normal_coordinates(const Polynomial& b)
{
  return ode_normal_coordinates(b, ScalarField::constant(1.0));
}

EngelStructure rescaled(const EngelStructure& e, const ScalarField& s)
{
  EngelStructure out(
    [e, s](const Point& p, int order) {
      const EngelJets pair = e.jets(p, order);
      const Jetd f = s(p, order);
      return EngelJets{f * pair.x, f * pair.y};
    },
    false);
  out.description = e.description + " (rescaled)";
  return out;
}

EngelStructure push_forward(const VectorExpr& x, const VectorExpr& y, const PolynomialMap& phi,
                            const PolynomialMap& phi_inverse, bool normalized)
{
  return EngelStructure(VectorField::from_expression(push_forward(x, phi, phi_inverse)),
                        VectorField::from_expression(push_forward(y, phi, phi_inverse)),
                        normalized);
}

std::pair<PolynomialMap, PolynomialMap> quadratic_shear()
{
  const PolynomialMap phi{var_x, var_y, var_u1, var_u2 + var_x * var_x + var_y * var_u1};
  const PolynomialMap inverse{var_x, var_y, var_u1, var_u2 - var_x * var_x - var_y * var_u1};
  return {phi, inverse};
}

EngelStructure sheared_cubic()
{
  const CubicFields f = cubic_fields();
  const auto [phi, inverse] = quadratic_shear();
  EngelStructure e = push_forward(expression(f.vx), expression(f.vy), phi, inverse, false);
  e.description = "cubic (sheared chart)";
  return e;
}

} // namespace engelcr
