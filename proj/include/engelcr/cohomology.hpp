#pragma once

// Chevalley-Eilenberg complex C^k(g_-, g) of the graded algebra
//   g = g_-3 + g_-2 + g_-1 + g_0,  basis V_0, V_x, V_y, V_2, V_3,
// with [V_x, V_y] = V_2, [V_x, V_2] = V_3, [V_0, V_j] = -|j| V_j.
//
// Coordinates:
//   C^1: psi^a_alpha          at (alpha - 1) * 5 + a            (20)
//   C^2: phi^a_{alpha beta}   at pair(alpha, beta) * 5 + a      (30)
//   C^3: phi^a_{alpha beta gamma} at triple * 5 + a             (20)
// with alpha < beta < gamma in {x, y, 2, 3} and a in {0, x, y, 2, 3}.
// Differentials:
//   (d psi)(X, Y)    = [X, psi Y] - [Y, psi X] - psi([X, Y])
//   (d phi)(X, Y, Z) = sum_cyclic [X, phi(Y, Z)] - phi([X, Y], Z)

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace engelcr {

using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RationalMatrix = DenseMatrix<Rational>;
using RationalVector = DenseVector<Rational>;

/// Algebra basis labels.
enum Basis : int { kV0 = 0, kVx = 1, kVy = 2, kV2 = 3, kV3 = 4 };

inline constexpr std::array<int, 5> kDegree{0, 1, 1, 2, 3};
inline constexpr std::array<const char*, 5> kLabel{"0", "x", "y", "2", "3"};

inline constexpr int kCochain1Dim = 20;
inline constexpr int kCochain2Dim = 30;
inline constexpr int kCochain3Dim = 20;

/// Ordered pairs alpha < beta of {x, y, 2, 3}: xy, x2, x3, y2, y3, 23.
inline constexpr std::array<std::array<int, 2>, 6> kPairs{
  {{kVx, kVy}, {kVx, kV2}, {kVx, kV3}, {kVy, kV2}, {kVy, kV3}, {kV2, kV3}}};
/// Ordered triples: xy2, xy3, x23, y23.
inline constexpr std::array<std::array<int, 3>, 4> kTriples{
  {{kVx, kVy, kV2}, {kVx, kVy, kV3}, {kVx, kV2, kV3}, {kVy, kV2, kV3}}};

/// Index of phi^a_{alpha beta} (alpha != beta); sign accounts for antisymmetry.
struct Cochain2Slot
{
  int index;
  int sign;
};
Cochain2Slot cochain2_slot(int a, int alpha, int beta);
int cochain2_index(int a, int alpha, int beta);
int cochain1_index(int a, int alpha);

/// |alpha| + |beta| - |a| for a C^2 coordinate (g_-k has weight k).
int cochain2_homogeneity(int index);
/// Human-readable name such as "phi^0_xy".
std::string cochain2_name(int index);

/// Structure constants: [V_a, V_b] as coordinates in the basis.
std::array<Rational, 5> bracket(int a, int b);

/// Maximal |Jacobi identity| violation over all basis triples (exactly zero).
Rational jacobi_defect();

/// d: C^1 -> C^2 (30 x 20) and d: C^2 -> C^3 (20 x 30).
RationalMatrix coboundary1();
RationalMatrix coboundary2();

// Exact linear algebra -----------------------------------------------------------

struct RowEchelon
{
  RationalMatrix reduced;
  std::vector<int> pivots;
};

RowEchelon row_reduce(const RationalMatrix& m);
int rank(const RationalMatrix& m);
/// Columns form a basis of the kernel.
RationalMatrix nullspace(const RationalMatrix& m);
/// Columns form a basis of the column span.
RationalMatrix column_basis(const RationalMatrix& m);

/// Coordinates of C^2 of the given homogeneity.
std::vector<int> homogeneity_coordinates(int homogeneity);

/// Basis of Z^2, optionally restricted to one homogeneity (columns, length 30).
RationalMatrix cocycle_space(std::optional<int> homogeneity = std::nullopt);
/// Basis of B^2 = d(C^1), optionally restricted to one homogeneity.
RationalMatrix coboundary_space(std::optional<int> homogeneity = std::nullopt);

/// A linear condition sum coef * phi[index] = 0.
struct LinearCondition
{
  std::string text;
  std::vector<std::pair<int, Rational>> terms;
  Rational evaluate(const RationalVector& c) const;
};

/// The closedness conditions characterizing Z^2 (13 conditions).
std::vector<LinearCondition> listed_cocycle_conditions();
/// Additional conditions cutting B^2 out of Z^2, with phi^0 read with the
/// curvature sign (V_0 components negated, see to_cochain_convention).
std::vector<LinearCondition> listed_coboundary_conditions();

/// Harmonic representatives: three of homogeneity 2, one of homogeneity 3.
std::vector<RationalVector> cohomology_representatives();

/// Curvature tables carry V_0 components with the opposite sign of this
/// complex: V_0 -> -V_0 identifies g with the algebra where [V_0, V_j] = |j| V_j.
template <typename Scalar>
DenseVector<Scalar> to_cochain_convention(DenseVector<Scalar> c)
{
  for (int p = 0; p < 6; ++p)
    c[p * 5 + kV0] = -c[p * 5 + kV0];
  return c;
}

struct HomogeneityCounts
{
  int homogeneity = 0;
  int cochains = 0;
  int cocycles = 0;
  int coboundaries = 0;
  int cohomology = 0;
};

struct CohomologyReport
{
  int dim_c2 = 0;
  int dim_z2 = 0;
  int dim_b2 = 0;
  int dim_h2 = 0;
  std::vector<HomogeneityCounts> by_homogeneity;
  bool d_squared_zero = false;
  bool jacobi = false;
  bool cocycle_conditions_hold = false;
  bool coboundary_conditions_hold = false;
  bool representatives_complement = false;
  bool injective_in_4_and_5 = false;
  std::string convention;
  std::vector<RationalVector> representatives;
};

CohomologyReport cohomology_report();

/// Split of a homogeneous cochain into exact, closed non-exact and non-closed
/// parts along fixed complements; coefficients along each basis vector too.
struct CochainSplit
{
  DenseVector<double> exact;
  DenseVector<double> closed;
  DenseVector<double> nonclosed;
  std::vector<double> exact_coefficients;
  std::vector<double> closed_coefficients;
};

/// In homogeneity 3 the exact direction is fixed as
/// (phi^0_x2, phi^x_x3, phi^y_y3, phi^2_23) = (-1, 1, 1, 2), the closed part is
/// spanned by phi^y_x3, and the non-closed complement by the remaining five
/// coordinates. Other homogeneities use computed bases.
CochainSplit classify_cochain(const DenseVector<double>& c, int homogeneity);

/// Bases used by classify_cochain (columns, length 30).
struct HomogeneityBases
{
  RationalMatrix exact;
  RationalMatrix closed;
  RationalMatrix nonclosed;
};
HomogeneityBases classification_bases(int homogeneity);

std::string format_rational(const Rational& r);

} // namespace engelcr
