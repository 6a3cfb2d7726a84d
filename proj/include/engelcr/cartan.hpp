#pragma once

// The canonical Cartan connection of a normalized Engel CR structure.
//
// Fiber dependence is exact: every bundle quantity is t^w * f(m) and is stored
// as a Weighted (jet of f at the point, integer weight w). The lifted frame is
//   Vhat_0 = t d/dt,  Vhat_j = t^|j| (W_j + alpha_j0 t d/dt),
//   W_x = T_x, W_y = T_y, W_2 = T_2 + alpha_2y T_y,
//   W_3 = T_3 + alpha_32 T_2 + alpha_3x T_x + alpha_3y T_y,
// with |x| = |y| = 1, |2| = 2, |3| = 3 and all alpha determined by phi = phi^3_x3.
// Curvature components k^a_{bc} are indexed by algebra labels (cohomology.hpp).

#include "engelcr/cohomology.hpp"
#include "engelcr/engel.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace engelcr {

/// t^weight * value.
struct Weighted
{
  Jetd value;
  int weight = 0;

  double at(double t) const { return std::pow(t, weight) * value.value(); }
};

Weighted operator+(const Weighted& a, const Weighted& b);
Weighted operator-(const Weighted& a, const Weighted& b);
Weighted operator*(double s, const Weighted& a);
/// Weights add.
Weighted operator*(const Weighted& a, const Weighted& b);

/// Jet order of the normalized pair needed for curvature up to the given homogeneity.
int required_order(int max_homogeneity);

/// Frame, coframe and structure functions of the normalized structure at a point.
class LocalAnalysis
{
public:
  /// Normalizes e at p and builds all jets from an (X, Y) pair of the given order.
  static LocalAnalysis at(const EngelStructure& e, const Point& p, int order);
  /// From already normalized X, Y jets.
  static LocalAnalysis from_jets(const EngelJets& normalized);

  int order() const { return order_; }
  const Point& base() const { return frame_.base; }
  const FrameJets& frame() const { return frame_; }
  const Coframe& coframe() const { return coframe_; }
  const StructureFunctions& phi() const { return phi_; }

  /// Derivative of a function along T_x (frame index kX) etc.
  Jetd along(int frame_index, const Jetd& f) const;

  /// phi^3_x3 and the derivatives entering the connection.
  const Jetd& phi3() const { return phi3_; }
  const Jetd& tx_phi3() const { return tx_phi3_; }
  const Jetd& ty_phi3() const { return ty_phi3_; }
  const Jetd& txty_phi3() const { return txty_phi3_; }
  const Jetd& tytx_phi3() const { return tytx_phi3_; }
  const Jetd& txx_phi3() const { return txx_phi3_; }

  /// alpha_{jk} for j in {x, y, 2, 3} and k in {0, x, y, 2, 3} (algebra labels).
  Jetd alpha(int j, int k) const;

  /// W_j as vector jets (algebra label j in {x, y, 2, 3}).
  VectorJet w(int j) const;
  /// alpha_{j0}, optionally with alpha_30 replaced by 0.
  Jetd alpha0(int j, bool zero_a30 = false) const;

  /// Vhat_j applied to a weighted function.
  Weighted vhat(int j, const Weighted& f) const;

private:
  int order_ = 0;
  FrameJets frame_;
  Coframe coframe_{JetMatrix{}, 0.0};
  StructureFunctions phi_;
  Jetd phi3_, tx_phi3_, ty_phi3_, txty_phi3_, tytx_phi3_, txx_phi3_;
};

// Connection coefficients ----------------------------------------------------------

struct ConnectionCoefficients
{
  Point point{};
  double t = 1.0;
  /// a[j][k] = t^|j| alpha_{jk} as weighted jets; j in 1..4, k in 0..4.
  std::array<std::array<Weighted, 5>, 5> a;
  /// b[j][k] at the point: the dual coframe Phihat^j = sum_k b_jk phi^k, phi^0 = dt/t.
  Eigen::Matrix<double, 5, 5> b;
};

ConnectionCoefficients connection_coefficients(const EngelStructure& e, const Point& p, double t,
                                               int order = 5);
ConnectionCoefficients connection_coefficients(const LocalAnalysis& la, double t);

// Curvature ---------------------------------------------------------------------------

struct EssentialCurvatures
{
  Weighted rx_y2; ///< R^x_{y2}, weight 2
  Weighted ry_y2; ///< R^y_{y2}, weight 2
  Weighted r2_x3; ///< R^2_{x3}, weight 2
  Weighted ry_x3; ///< R^y_{x3}, weight 3

  std::array<Weighted, 4> all() const { return {rx_y2, ry_y2, r2_x3, ry_x3}; }
};

inline constexpr std::array<const char*, 4> kEssentialNames{"R^x_y2", "R^y_y2", "R^2_x3", "R^y_x3"};

EssentialCurvatures essential_curvatures(const LocalAnalysis& la);
EssentialCurvatures essential_curvatures(const EngelStructure& e, const Point& p, int order = 5);

/// Key (a, b, c) with b < c in algebra labels.
struct CurvatureKey
{
  int a;
  int b;
  int c;
  auto operator<=>(const CurvatureKey&) const = default;
};

int homogeneity(const CurvatureKey& k);
std::string curvature_name(const CurvatureKey& k);

using CurvatureTable = std::map<CurvatureKey, Weighted>;

/// All k^a_{bc} of homogeneity <= max from the listed formulas in the essential
/// curvatures and their Vhat-derivatives. Homogeneities below 2 are zero.
CurvatureTable curvature_table(const LocalAnalysis& la, int max_homogeneity);

/// k^a_{bc} = Phihat^a([Vhat_b, Vhat_c]) - c^a_{bc} from lifted-frame brackets.
/// With zero_a30 the coefficient alpha_30 is replaced by 0.
CurvatureTable bracket_curvature_table(const LocalAnalysis& la, int max_homogeneity,
                                       bool zero_a30 = false);

/// Homogeneity-h part of a table as a 30-vector in the cochain convention.
DenseVector<double> to_cochain(const CurvatureTable& table, int homogeneity);

/// alpha_30 recovered as the exact-part coefficient of the homogeneity-3
/// bracket curvature computed with alpha_30 = 0.
double a30_from_exact_part(const LocalAnalysis& la);

struct CurvatureReport
{
  Point point{};
  double t = 1.0;
  int order = 0;
  EssentialCurvatures essential;
  CurvatureTable table;
};

CurvatureReport curvature_report(const EngelStructure& e, const Point& p, double t,
                                 int max_homogeneity, int order);

// Connection form ---------------------------------------------------------------------

struct ConnectionForm
{
  Point point{};
  /// varpi(T_x), varpi(T_y), varpi(T_2), varpi(T_3).
  std::array<Jetd, 4> frame_components;
  /// varpi in chart covectors dx, dy, du1, du2.
  std::array<Jetd, 4> chart_components;
  /// d varpi in chart coordinates, (i, j) for i < j.
  std::array<std::array<Jetd, 4>, 4> d_varpi;
  double d_varpi_residual = 0.0;
  bool closed = false;
};

inline constexpr double kClosedThreshold = 1e-8;

ConnectionForm connection_form(const LocalAnalysis& la);
ConnectionForm connection_form(const EngelStructure& e, const Point& p, int order = 6);

// Tests and derived objects ----------------------------------------------------------

inline constexpr double kVanishingThreshold = 1e-7;

struct PointInvariants
{
  Point point{};
  std::array<double, 4> values{}; ///< at t = 1
  double max_abs = 0.0;
};

struct FlatnessResult
{
  bool flat = false;
  double max_residual = 0.0;
  double threshold = kVanishingThreshold;
  std::vector<PointInvariants> points;
};

/// Essential curvatures at t = 1 over the points (evaluated in parallel).
FlatnessResult flatness_test(const EngelStructure& e, const std::vector<Point>& points,
                             int order = 5, double threshold = kVanishingThreshold);

struct UmbilicResult
{
  bool umbilic = false;
  PointInvariants invariants;
  double threshold = kVanishingThreshold;
};

UmbilicResult umbilicity_test(const EngelStructure& e, const Point& p, int order = 5,
                              double threshold = kVanishingThreshold);

/// Projected lifted frame (tW_x, tW_y, t^2 W_2, t^3 W_3) at the point.
std::array<Eigen::Vector4d, 4> distinguished_frame_at(const EngelStructure& e, const Point& p,
                                                      double t, int order = 5);

enum class PlanePair { Y2, X3, Y3 };

struct IntegrabilityResult
{
  bool integrable = false;
  /// Components of [W_b, W_c] outside span(W_b, W_c) at the point.
  std::array<double, 2> off_span{};
  double residual = 0.0;
  double threshold = kVanishingThreshold;
};

IntegrabilityResult integrability_check(const EngelStructure& e, const Point& p, PlanePair which,
                                        int order = 6, double threshold = kVanishingThreshold);

struct GlobalScaleResult
{
  bool closed = false;
  double d_varpi_residual = 0.0;
  /// f = exp(2 psi) with psi(p) = 0 and d psi = varpi, when closed.
  std::optional<Jetd> f;
  /// |T_y f| and |X(log f) - phi^3_x3 / 3| over all coefficients.
  double ty_residual = 0.0;
  double x_log_residual = 0.0;
};

GlobalScaleResult global_scale_test(const EngelStructure& e, const Point& p, int order = 7);

} // namespace engelcr
