#pragma once

// Engel CR structures given by the pair (X, Y) with X = JY and Y spanning D0.
//
// The structure is an evaluator producing the X and Y jets jointly, so that
// constructions which mix the two (D0 alignment, scale normalization) can be
// applied per point without recomputing shared work.

#include "engelcr/fields.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace engelcr {

/// X and Y as jets at one point and order.
struct EngelJets
{
  VectorJet x;
  VectorJet y;

  int order() const { return std::min(order_of(x), order_of(y)); }
  const Point& base() const { return x[0].base(); }
  EngelJets truncated(int order) const;
};

class EngelStructure
{
public:
  using PairEvaluator = std::function<EngelJets(const Point&, int)>;

  EngelStructure(VectorField x, VectorField y, bool normalized = false);
  EngelStructure(PairEvaluator eval, bool normalized);

  EngelJets jets(const Point& p, int order) const { return eval_(p, order); }
  VectorField x() const;
  VectorField y() const;
  Frame frame() const;

  /// True when [T_y, T_2] lies in D identically (no scale correction needed).
  bool normalized() const { return normalized_; }

  /// Free-form description carried into reports.
  std::string description;
  /// Point at which a scale normalization was anchored, if any.
  std::optional<Point> anchor;

private:
  PairEvaluator eval_;
  bool normalized_;
};

// Validation -------------------------------------------------------------------

struct EngelDiagnostics
{
  Point point{};
  /// det(T_x, T_y, T_2, T_3) at the point.
  double frame_determinant = 0.0;
  /// max(|det(X, Y, T_2, [X, T_2])|, |det(X, Y, T_2, [Y, T_2])|).
  double engel_determinant = 0.0;
  /// |L2(Y, T_2)| / max(|L2(X, T_2)|, |L2(Y, T_2)|), zero iff Y spans D0.
  double d0_residual = 0.0;
  bool engel = false;
  bool d0_aligned = false;
};

inline constexpr double kD0Threshold = 1e-8;

/// Non-throwing per-point check.
EngelDiagnostics diagnose(const EngelStructure& e, const Point& p);

/// Throws EngelDegenerate or NotD0Aligned at the first failing point.
std::vector<EngelDiagnostics> validate(const EngelStructure& e, const std::vector<Point>& points);

// Canonical line D0 ------------------------------------------------------------

/// D0 = span(alpha U + beta V) as jets; the dominant coefficient is exactly 1.
struct D0Direction
{
  Jetd alpha;
  Jetd beta;
  /// |L2(alpha U + beta V, [U, V])| relative to |L2(U, [U,V])| + |L2(V, [U,V])|.
  double residual = 0.0;
};

/// Direction of D0 from U, V jets of order m; the result has order m - 2.
D0Direction find_d0(const VectorJet& u, const VectorJet& v);
D0Direction find_d0(const VectorField& u, const VectorField& v, const Point& p, int order);

/// Given U, V of order m spanning D with JU = V, returns (X, Y) of order
/// m - 2 with Y = -W/2, W = alpha U + beta V spanning D0, and X = JY.
EngelJets align_d0(const VectorJet& u, const VectorJet& v);

/// Structure whose pair is the D0 alignment of (U, V); samples U, V two orders higher.
EngelStructure align_d0(const VectorField& u, const VectorField& v);

// Scale normalization ---------------------------------------------------------

/// phi^2([Y, [X, Y]]) from X, Y of order m; result order m - 2.
Jetd normalization_defect(const EngelJets& pair);

struct Normalization
{
  /// Normalized (tau X, tau Y) at the requested order.
  EngelJets jets;
  /// tau as a jet, tau(p) = 1.
  Jetd tau;
  /// True when the defect was below the fast-path threshold and tau = 1.
  bool fast_path = false;
};

inline constexpr double kNormalizationFastPath = 1e-10;

/// Solves Y(log tau) = -phi^2_{y2} / 3 with log tau = 0 on the hyperplane
/// through p spanned by X(p), T_2(p), T_3(p). Samples the structure at order + 1.
Normalization normalize_at(const EngelStructure& e, const Point& p, int order);

/// Normalized jets at p: the structure's own jets if it is flagged normalized,
/// otherwise normalize_at.
EngelJets normalized_jets(const EngelStructure& e, const Point& p, int order);

/// Structure (tau X, tau Y) with tau from normalize_at(e, p, order) extended by
/// its Taylor polynomial. Exact at p for evaluation orders <= order.
EngelStructure normalize_scale(const EngelStructure& e, const Point& p, int order = 8);

// Levi-Tanaka brackets --------------------------------------------------------

/// Quotient coordinates of the Levi-Tanaka brackets in the adapted frame.
struct LeviTanakaData
{
  /// L1(X, Y) in D'/D, coordinate on the T_2 class.
  double l1_xy = 0.0;
  /// L2(X, T_2) in TM/D', coordinate on the T_3 class.
  double l2_x2 = 0.0;
  /// L2(Y, T_2) in TM/D'; zero for a D0-aligned Y.
  double l2_y2 = 0.0;
};

LeviTanakaData levi_tanaka_at(const EngelStructure& e, const Point& p);

} // namespace engelcr
