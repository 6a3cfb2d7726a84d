#include "engelcr/engel.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>

namespace engelcr {

namespace {

// det of the 4x4 jet matrix with columns a, b, c, d.
Jetd determinant(const VectorJet& a, const VectorJet& b, const VectorJet& c, const VectorJet& d)
{
  const std::array<const VectorJet*, 4> cols{&a, &b, &c, &d};
  const int n = std::min({order_of(a), order_of(b), order_of(c), order_of(d)});
  std::array<int, 4> perm{0, 1, 2, 3};
  Jetd det(n, a[0].base());
  do {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (perm[i] > perm[j])
          ++inversions;
    Jetd term = (*cols[0])[perm[0]].truncated(n);
    for (int c2 = 1; c2 < 4; ++c2)
      term = term * (*cols[c2])[perm[c2]].truncated(n);
    if (inversions % 2 == 0)
      det += term;
    else
      det -= term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

double determinant(const Eigen::Vector4d& a, const Eigen::Vector4d& b, const Eigen::Vector4d& c,
                   const Eigen::Vector4d& d)
{
  Eigen::Matrix4d m;
  m << a, b, c, d;
  return m.determinant();
}

} // namespace

EngelJets EngelJets::truncated(int order) const
{
  return {engelcr::truncated(x, order), engelcr::truncated(y, order)};
}

EngelStructure::EngelStructure(VectorField x, VectorField y, bool normalized)
  : eval_([x = std::move(x), y = std::move(y)](const Point& p, int order) {
      return EngelJets{x(p, order), y(p, order)};
    }),
    normalized_(normalized)
{
}

EngelStructure::EngelStructure(PairEvaluator eval, bool normalized)
  : eval_(std::move(eval)), normalized_(normalized)
{
}

VectorField EngelStructure::x() const
{
  return VectorField([eval = eval_](const Point& p, int order) { return eval(p, order).x; });
}

VectorField EngelStructure::y() const
{
  return VectorField([eval = eval_](const Point& p, int order) { return eval(p, order).y; });
}

Frame EngelStructure::frame() const
{
  Frame f = adapted_frame(x(), y());
  f.normalized = normalized_;
  return f;
}

EngelDiagnostics diagnose(const EngelStructure& e, const Point& p)
{
  const EngelJets pair = e.jets(p, 2);
  const VectorJet t2 = bracket(pair.x, pair.y);
  const Eigen::Vector4d x = values(pair.x), y = values(pair.y), v2 = values(t2);
  const double dx = determinant(x, y, v2, values(bracket(truncated(pair.x, 1), t2)));
  const double dy = determinant(x, y, v2, values(bracket(truncated(pair.y, 1), t2)));

  EngelDiagnostics d;
  d.point = p;
  d.frame_determinant = dx;
  d.engel_determinant = std::max(std::abs(dx), std::abs(dy));
  d.engel = d.engel_determinant > kDegeneracyThreshold;
  d.d0_residual = d.engel ? std::abs(dy) / d.engel_determinant : 1.0;
  d.d0_aligned = d.engel && d.d0_residual < kD0Threshold;
  return d;
}

std::vector<EngelDiagnostics> validate(const EngelStructure& e, const std::vector<Point>& points)
{
  std::vector<EngelDiagnostics> out;
  for (const Point& p : points) {
    const EngelDiagnostics d = diagnose(e, p);
    if (!d.engel)
      throw EngelDegenerate(p, "Engel determinant " + std::to_string(d.engel_determinant));
    if (!d.d0_aligned)
      throw NotD0Aligned(p, d.d0_residual);
    out.push_back(d);
  }
  return out;
}

D0Direction find_d0(const VectorJet& u, const VectorJet& v)
{
  const int m = std::min(order_of(u), order_of(v));
  if (m < 2)
    throw OrderExhausted("D0 direction needs U, V jets of order >= 2");
  const VectorJet t2 = bracket(u, v);
  const VectorJet a_vec = bracket(truncated(u, m - 1), t2);
  const VectorJet b_vec = bracket(truncated(v, m - 1), t2);
  const VectorJet un = truncated(u, m - 2), vn = truncated(v, m - 2), t2n = truncated(t2, m - 2);
  // L2(U, T_2) and L2(V, T_2) up to the common factor of the annihilator of D'.
  const Jetd a = determinant(un, vn, t2n, a_vec);
  const Jetd b = determinant(un, vn, t2n, b_vec);
  const double scale = std::max(std::abs(a.value()), std::abs(b.value()));
  if (!(scale > kDegeneracyThreshold))
    throw EngelDegenerate(u[0].base(), "second Levi bracket vanishes");

  // alpha a + beta b = 0
  D0Direction d;
  if (std::abs(b.value()) >= std::abs(a.value())) {
    d.alpha = Jetd::constant(1.0, m - 2, u[0].base());
    d.beta = -(a / b);
  } else {
    d.alpha = -(b / a);
    d.beta = Jetd::constant(1.0, m - 2, u[0].base());
  }
  if (m >= 3) {
    const VectorJet w = d.alpha * un + d.beta * vn;
    const Jetd r = determinant(un, vn, t2n, bracket(w, t2n));
    d.residual = std::abs(r.value()) / (std::abs(a.value()) + std::abs(b.value()));
  }
  return d;
}

D0Direction find_d0(const VectorField& u, const VectorField& v, const Point& p, int order)
{
  return find_d0(u(p, order + 2), v(p, order + 2));
}

EngelJets align_d0(const VectorJet& u, const VectorJet& v)
{
  const D0Direction d = find_d0(u, v);
  const int n = d.alpha.order();
  const VectorJet un = truncated(u, n), vn = truncated(v, n);
  // J U = V, J V = -U
  const VectorJet w = d.alpha * un + d.beta * vn;
  const VectorJet jw = d.alpha * vn - d.beta * un;
  return {-0.5 * jw, -0.5 * w};
}

EngelStructure align_d0(const VectorField& u, const VectorField& v)
{
  return EngelStructure(
    [u, v](const Point& p, int order) { return align_d0(u(p, order + 2), v(p, order + 2)); },
    false);
}

Jetd normalization_defect(const EngelJets& pair)
{
  const int m = pair.order();
  if (m < 2)
    throw OrderExhausted("normalization defect needs X, Y jets of order >= 2");
  const VectorJet x = truncated(pair.x, m), y = truncated(pair.y, m);
  const VectorJet t2 = bracket(x, y);
  FrameJets f;
  f.order = m - 2;
  f.base = x[0].base();
  f.t = {truncated(x, m - 2), truncated(y, m - 2), truncated(t2, m - 2),
         bracket(truncated(x, m - 1), t2)};
  const Coframe coframe = dual_coframe(f);
  return coframe.pair(2, bracket(truncated(y, m - 1), t2));
}

Normalization normalize_at(const EngelStructure& e, const Point& p, int order)
{
  if (order < 1)
    throw InsufficientOrder("scale normalization needs order >= 1");
  const EngelJets pair = e.jets(p, order + 1);
  const Jetd h = normalization_defect(pair);

  Normalization out;
  if (h.max_abs() < kNormalizationFastPath) {
    out.jets = pair.truncated(order);
    out.tau = Jetd::constant(1.0, order, p);
    out.fast_path = true;
    return out;
  }

  // Linear chart xi = M eta in which Y(p) = d/d eta_0 and the hyperplane
  // eta_0 = 0 is spanned by X(p), T_2(p), T_3(p).
  const VectorJet t2 = bracket(pair.x, pair.y);
  const VectorJet t3 = bracket(truncated(pair.x, order), t2);
  Eigen::Matrix4d m;
  m << values(pair.y), values(pair.x), values(t2), values(t3);
  const Eigen::PartialPivLU<Eigen::Matrix4d> lu(m);
  if (!(std::abs(lu.determinant()) > kDegeneracyThreshold))
    throw NormalizationFailed("no transversal for the scale equation at " + format_point(p));
  const Eigen::Matrix4d minv = lu.inverse();

  const int n = order - 1;
  std::array<Jetd, 4> y_raw, y_eta;
  for (int k = 0; k < 4; ++k)
    y_raw[k] = compose_linear(pair.y[k].truncated(n), m);
  for (int i = 0; i < 4; ++i) {
    y_eta[i] = Jetd(n, p);
    for (int k = 0; k < 4; ++k)
      y_eta[i] += minv(i, k) * y_raw[k];
  }
  const Jetd rhs = (-1.0 / 3.0) * compose_linear(h, m);
  const Jetd inv0 = invert(y_eta[0]);

  // Y(g) = rhs with g = 0 on eta_0 = 0; each sweep fixes one more degree.
  Jetd g(order, p);
  for (int sweep = 0; sweep <= order; ++sweep) {
    Jetd r = rhs;
    for (int j = 1; j < 4; ++j)
      r -= y_eta[j] * partial(g, j);
    g = integrate(r * inv0, 0);
  }
  g = compose_linear(g, minv);
  g[0] = 0.0;

  out.tau = exp(g);
  const VectorJet x = truncated(pair.x, order), y = truncated(pair.y, order);
  out.jets = {out.tau * x, out.tau * y};

  if (order >= 2) {
    const double after = normalization_defect(out.jets).max_abs();
    if (!(after < 1e-6 * std::max(1.0, h.max_abs())))
      throw NormalizationFailed("scale equation residual " + std::to_string(after) + " at " +
                                format_point(p));
  }
  return out;
}

EngelJets normalized_jets(const EngelStructure& e, const Point& p, int order)
{
  if (e.normalized())
    return e.jets(p, order);
  return normalize_at(e, p, order).jets;
}

EngelStructure normalize_scale(const EngelStructure& e, const Point& p, int order)
{
  const Normalization n = normalize_at(e, p, order);
  if (n.fast_path) {
    EngelStructure same(
      [e](const Point& q, int k) { return e.jets(q, k); }, true);
    same.description = e.description;
    same.anchor = p;
    return same;
  }
  const ScalarField tau = ScalarField::taylor(n.tau);
  EngelStructure out(
    [e, tau](const Point& q, int k) {
      const EngelJets pair = e.jets(q, k);
      const Jetd t = tau(q, k);
      return EngelJets{t * pair.x, t * pair.y};
    },
    true);
  out.description = e.description;
  out.anchor = p;
  return out;
}

LeviTanakaData levi_tanaka_at(const EngelStructure& e, const Point& p)
{
  const EngelJets pair = e.jets(p, 3);
  const FrameJets f = FrameJets::from_pair(pair.x, pair.y);
  const Coframe coframe = dual_coframe(f);
  const VectorJet t2 = bracket(pair.x, pair.y);
  const VectorJet y2 = bracket(truncated(pair.y, 2), t2);
  LeviTanakaData d;
  d.l1_xy = coframe.pair(2, t2).value();
  d.l2_x2 = coframe.pair(3, f.t[k3]).value();
  d.l2_y2 = coframe.pair(3, y2).value();
  return d;
}

} // namespace engelcr
