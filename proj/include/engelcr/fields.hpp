#pragma once

// Vector fields on a four-dimensional chart, evaluated lazily as jets.
//
// A field is an evaluator (point, order) -> jets. Lie brackets are formed
// per evaluation: evaluating [A, B] at order n samples A and B at order n + 1.
// The jet-level functions below (bracket, derivative_along, ...) are the
// building blocks; every one of them documents how many orders it consumes.

#include "engelcr/jet.hpp"
#include "engelcr/polynomial.hpp"

#include <Eigen/Core>

#include <array>
#include <functional>

namespace engelcr {

using Coords = std::array<Jetd, 4>;
/// Chart components of a vector field as jets at a common point and order.
using VectorJet = std::array<Jetd, 4>;
/// Row-major 4x4 matrix of jets.
using JetMatrix = std::array<std::array<Jetd, 4>, 4>;

/// The coordinate jets base[i] + xi_i.
Coords seed_coordinates(const Point& p, int order);

using ScalarExpr = std::function<Jetd(const Coords&)>;
using VectorExpr = std::function<VectorJet(const Coords&)>;

class ScalarField
{
public:
  using Evaluator = std::function<Jetd(const Point&, int)>;

  explicit ScalarField(Evaluator eval) : eval_(std::move(eval)) {}

  /// Field given by a formula in the coordinate jets.
  static ScalarField from_expression(ScalarExpr expr);
  static ScalarField from_polynomial(const Polynomial& p);
  static ScalarField constant(double c);
  /// The Taylor polynomial of j, re-expanded at any requested point.
  static ScalarField taylor(const Jetd& j);

  Jetd operator()(const Point& p, int order) const { return eval_(p, order); }

private:
  Evaluator eval_;
};

class VectorField
{
public:
  using Evaluator = std::function<VectorJet(const Point&, int)>;

  explicit VectorField(Evaluator eval) : eval_(std::move(eval)) {}

  static VectorField from_expression(VectorExpr expr);
  static VectorField from_polynomials(const std::array<Polynomial, 4>& components);
  static VectorField from_components(const std::array<ScalarField, 4>& components);
  /// The coordinate field d/d(axis).
  static VectorField coordinate(int axis);

  VectorJet operator()(const Point& p, int order) const { return eval_(p, order); }
  ScalarField component(int i) const;
  Eigen::Vector4d value(const Point& p) const;

private:
  Evaluator eval_;
};

// Jet-level vector algebra ---------------------------------------------------

int order_of(const VectorJet& v);
VectorJet truncated(const VectorJet& v, int order);
Eigen::Vector4d values(const VectorJet& v);

VectorJet operator+(const VectorJet& a, const VectorJet& b);
VectorJet operator-(const VectorJet& a, const VectorJet& b);
VectorJet operator*(double s, const VectorJet& v);
/// s * v at the smaller of the two orders.
VectorJet operator*(const Jetd& s, const VectorJet& v);

/// [A, B]_i = sum_j A_j d_j B_i - B_j d_j A_i; result order min(orders) - 1.
VectorJet bracket(const VectorJet& a, const VectorJet& b);

/// v(f) = sum_j v_j d_j f; result order min(order(v), order(f) - 1).
Jetd derivative_along(const VectorJet& v, const Jetd& f);

/// Jet-valued inverse of a matrix with invertible constant part.
/// Throws SingularJet when |det| of the constant part is <= threshold.
JetMatrix invert(const JetMatrix& m, double det_threshold);

// Field-level operations -----------------------------------------------------

VectorField lie_bracket(const VectorField& a, const VectorField& b);
VectorField scaled(const ScalarField& g, const VectorField& v);

/// Adapted frame (T_x, T_y, T_2, T_3) = (X, Y, [X,Y], [X,[X,Y]]).
struct Frame
{
  VectorField tx;
  VectorField ty;
  VectorField t2;
  VectorField t3;
  bool normalized = false;

  const VectorField& operator[](int i) const;
};

Frame adapted_frame(const VectorField& x, const VectorField& y);

/// Frame index labels, also used for the structure-function table.
enum FrameIndex : int { kX = 0, kY = 1, k2 = 2, k3 = 3 };

/// Frame vectors as jets at one point, all at the same order.
struct FrameJets
{
  std::array<VectorJet, 4> t;
  int order = 0;
  Point base{};

  /// Builds T_2, T_3 from X, Y jets of order n; the frame has order n - 2.
  static FrameJets from_pair(const VectorJet& x, const VectorJet& y);
  /// Constant 4x4 frame matrix (columns are T_x, T_y, T_2, T_3).
  Eigen::Matrix4d matrix() const;
};

/// Threshold on |det| of the constant frame matrix below which the frame is degenerate.
inline constexpr double kDegeneracyThreshold = 1e-8;

/// Dual coframe: row alpha is phi^alpha in the chart covectors.
class Coframe
{
public:
  Coframe(JetMatrix rows, double determinant) : rows_(std::move(rows)), det_(determinant) {}

  const Jetd& operator()(int alpha, int chart_index) const { return rows_[alpha][chart_index]; }
  const JetMatrix& rows() const { return rows_; }
  int order() const { return rows_[0][0].order(); }
  /// Determinant of the constant frame matrix.
  double frame_determinant() const { return det_; }

  /// phi^alpha(v) at the smaller of the orders.
  Jetd pair(int alpha, const VectorJet& v) const;
  /// Frame components (phi^x(v), ..., phi^3(v)).
  std::array<Jetd, 4> decompose(const VectorJet& v) const;

private:
  JetMatrix rows_;
  double det_;
};

/// Throws EngelDegenerate(p) when the frame is singular at its base point.
Coframe dual_coframe(const FrameJets& frame);
/// Coframe of order n, sampling X and Y at n + 2.
Coframe dual_coframe(const Frame& frame, const Point& p, int order);

/// phi^alpha_{beta gamma} = phi^alpha([T_beta, T_gamma]).
class StructureFunctions
{
public:
  const Jetd& operator()(int alpha, int beta, int gamma) const { return phi_[alpha][beta][gamma]; }
  int order() const { return phi_[0][0][1].order(); }

  static StructureFunctions compute(const FrameJets& frame, const Coframe& coframe);

private:
  std::array<std::array<std::array<Jetd, 4>, 4>, 4> phi_;
};

/// Structure functions at order n; X and Y are sampled at n + 3.
StructureFunctions structure_functions(const Frame& frame, const Point& p, int order);

// Chart changes ---------------------------------------------------------------

using PolynomialMap = std::array<Polynomial, 4>;

Coords apply(const PolynomialMap& map, const Coords& c);

/// Push-forward of v along phi: (D phi . v) o phi^{-1}.
VectorExpr push_forward(const VectorExpr& v, const PolynomialMap& phi, const PolynomialMap& phi_inverse);

// Flows ----------------------------------------------------------------------

/// Classical fixed-step RK4 for the flow of v, using the field values only.
Point integrate_flow(const VectorField& v, const Point& start, double duration, int steps);

} // namespace engelcr
