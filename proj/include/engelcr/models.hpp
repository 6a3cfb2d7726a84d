#pragma once

// Built-in Engel CR structures: the cubic, rigid graphs in C^3 (including the
// weighted normal form), and the third-order ODE chart.

#include "engelcr/engel.hpp"

#include <string>

namespace engelcr {

// Cubic v1 = |z|^2, v2 = Re z |z|^2 ----------------------------------------------

/// The left-invariant fields of the cubic on the chart (x, y, u1, u2).
struct CubicFields
{
  std::array<Polynomial, 4> vx; ///< V_x = 1/2 dx + y du1 + xy du2
  std::array<Polynomial, 4> vy; ///< V_y = -1/2 dy + x du1 + (3x^2 + y^2)/2 du2
  std::array<Polynomial, 4> v2; ///< V_2 = du1 + 2x du2
  std::array<Polynomial, 4> v3; ///< V_3 = du2
};

CubicFields cubic_fields();

/// (X, Y) = (V_x, V_y); flagged normalized since [V_y, V_2] = 0.
EngelStructure cubic();

// Rigid graphs Im w1 = F1(x, y), Im w2 = F2(x, y) --------------------------------

struct GraphSpec
{
  Polynomial f1;
  Polynomial f2;
};

/// U = dx + F1_y du1 + F2_y du2 and V = JU = dy - F1_x du1 - F2_x du2.
std::pair<VectorField, VectorField> graph_fields(const GraphSpec& g);

/// D0-aligned structure of the graph; throws EngelDegenerate if the Engel
/// condition fails at the origin. Not scale-normalized.
EngelStructure graph_to_engel(const GraphSpec& g);

/// Re and Im of z^a zbar^b as real polynomials in (x, y).
std::pair<Polynomial, Polynomial> complex_monomial(int a, int b);

struct NormalFormCoefficients
{
  double a1 = 0, a2 = 0;
  double b1 = 0, b2 = 0, b3 = 0, b4 = 0, b5 = 0, b6 = 0, b7 = 0, b8 = 0;
};

/// Im w1 = |z|^2 + A1 Re z^2 zbar^3 + A2 Im z^2 zbar^3,
/// Im w2 = Re z^2 zbar + B1 Re z^4 zbar + B2 Re z^2 zbar^3 + B3 Im z^2 zbar^3
///       + B4 Re z^5 zbar + B5 Im z^5 zbar + B6 Re z^4 zbar^2 + B7 Im z^4 zbar^2 + B8 |z|^6.
GraphSpec normal_form_graph(const NormalFormCoefficients& c);
EngelStructure normal_form_model(const NormalFormCoefficients& c);

// Third-order ODE chart (x, y, p, q) ------------------------------------------------

/// X = s (dx + p dy + q dp + B dq), Y = s dq for y''' = B(x, y, y', y'').
EngelStructure ode_normal_coordinates(const Polynomial& b, const ScalarField& scale);
EngelStructure ode_normal_coordinates(const Polynomial& b);

// Transformations ----------------------------------------------------------------

/// (s X, s Y); J-linear, so still D0-aligned but generally not normalized.
EngelStructure rescaled(const EngelStructure& e, const ScalarField& s);

/// Push-forward of an expression-defined pair along a polynomial diffeomorphism.
EngelStructure push_forward(const VectorExpr& x, const VectorExpr& y, const PolynomialMap& phi,
                            const PolynomialMap& phi_inverse, bool normalized);

/// The cubic written in the chart (x, y, u1, u2 + x^2 + y u1).
EngelStructure sheared_cubic();
/// The shear (x, y, u1, u2) -> (x, y, u1, u2 + x^2 + y u1) and its inverse.
std::pair<PolynomialMap, PolynomialMap> quadratic_shear();

} // namespace engelcr
