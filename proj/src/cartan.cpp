#include "engelcr/cartan.hpp"

#include <Eigen/LU>

#include <future>

namespace engelcr {

namespace {

// Mixed-order arithmetic: operands are truncated to the smaller order.
Jetd add(const Jetd& a, const Jetd& b)
{
  const int n = std::min(a.order(), b.order());
  return a.truncated(n) + b.truncated(n);
}

Jetd sub(const Jetd& a, const Jetd& b)
{
  const int n = std::min(a.order(), b.order());
  return a.truncated(n) - b.truncated(n);
}

Jetd mul(const Jetd& a, const Jetd& b)
{
  const int n = std::min(a.order(), b.order());
  return a.truncated(n) * b.truncated(n);
}

VectorJet vadd(const VectorJet& a, const VectorJet& b)
{
  const int n = std::min(order_of(a), order_of(b));
  return truncated(a, n) + truncated(b, n);
}

Jetd zero_like(const Jetd& j) { return Jetd(j.order(), j.base()); }

Jetd padded(const Jetd& a, int order)
{
  Jetd r(order, a.base());
  r.coefficients().head(a.size()) = a.coefficients();
  return r;
}

void require_order(int have, int need, const std::string& what)
{
  if (have < need)
    throw InsufficientOrder(what + " needs jet order " + std::to_string(need) + ", got " +
                            std::to_string(have));
}

int frame_index(int label) { return label - 1; }

} // namespace

Weighted operator+(const Weighted& a, const Weighted& b)
{
  if (a.weight != b.weight)
    throw StructuralError("adding weights " + std::to_string(a.weight) + " and " +
                          std::to_string(b.weight));
  return {add(a.value, b.value), a.weight};
}

Weighted operator-(const Weighted& a, const Weighted& b)
{
  if (a.weight != b.weight)
    throw StructuralError("subtracting weights " + std::to_string(a.weight) + " and " +
                          std::to_string(b.weight));
  return {sub(a.value, b.value), a.weight};
}

Weighted operator*(double s, const Weighted& a) { return {s * a.value, a.weight}; }

Weighted operator*(const Weighted& a, const Weighted& b)
{
  return {mul(a.value, b.value), a.weight + b.weight};
}

int required_order(int max_homogeneity)
{
  if (max_homogeneity > 5)
    throw StructuralError("curvature has homogeneity at most 5");
  if (max_homogeneity <= 3)
    return 5;
  return max_homogeneity + 2;
}

// LocalAnalysis --------------------------------------------------------------------

LocalAnalysis LocalAnalysis::at(const EngelStructure& e, const Point& p, int order)
{
  require_order(order, 5, "local analysis");
  return from_jets(normalized_jets(e, p, order));
}

LocalAnalysis LocalAnalysis::from_jets(const EngelJets& normalized)
{
  LocalAnalysis la;
  la.order_ = normalized.order();
  require_order(la.order_, 5, "local analysis");
  la.frame_ = FrameJets::from_pair(normalized.x, normalized.y);
  la.coframe_ = dual_coframe(la.frame_);
  la.phi_ = StructureFunctions::compute(la.frame_, la.coframe_);
  la.phi3_ = la.phi_(k3, kX, k3);
  la.tx_phi3_ = la.along(kX, la.phi3_);
  la.ty_phi3_ = la.along(kY, la.phi3_);
  la.txty_phi3_ = la.along(kX, la.ty_phi3_);
  la.tytx_phi3_ = la.along(kY, la.tx_phi3_);
  la.txx_phi3_ = la.along(kX, la.tx_phi3_);
  return la;
}

Jetd LocalAnalysis::along(int frame_index, const Jetd& f) const
{
  return derivative_along(frame_.t[frame_index], f);
}

Jetd LocalAnalysis::alpha0(int j, bool zero_a30) const
{
  const Jetd& f = phi3_;
  switch (j) {
  case kVx:
    return (-1.0 / 6.0) * f;
  case kVy:
    return zero_like(f);
  case kV2:
    return (1.0 / 6.0) * ty_phi3_;
  case kV3:
    if (zero_a30)
      return zero_like(txty_phi3_);
    return sub(sub((1.0 / 3.0) * txty_phi3_, (1.0 / 6.0) * tytx_phi3_),
               (1.0 / 18.0) * mul(f, ty_phi3_));
  default:
    throw StructuralError("alpha_j0 needs j in {x, y, 2, 3}");
  }
}

Jetd LocalAnalysis::alpha(int j, int k) const
{
  if (k == kV0)
    return alpha0(j);
  const Jetd& f = phi3_;
  const Jetd one = Jetd::constant(1.0, f.order(), f.base());
  if (j == k)
    return one;
  if (j == kV2 && k == kVy)
    return (-1.0 / 6.0) * f;
  if (j == kV3 && k == kVx)
    return (-1.0 / 6.0) * ty_phi3_;
  if (j == kV3 && k == kVy)
    return sub((1.0 / 18.0) * (f * f), (1.0 / 6.0) * tx_phi3_);
  if (j == kV3 && k == kV2)
    return (-0.5) * f;
  return zero_like(f);
}

VectorJet LocalAnalysis::w(int j) const
{
  const auto& t = frame_.t;
  switch (j) {
  case kVx:
    return t[kX];
  case kVy:
    return t[kY];
  case kV2:
    return vadd(t[k2], alpha(kV2, kVy) * t[kY]);
  case kV3:
    return vadd(vadd(vadd(t[k3], alpha(kV3, kV2) * t[k2]), alpha(kV3, kVx) * t[kX]),
                alpha(kV3, kVy) * t[kY]);
  default:
    throw StructuralError("W_j needs j in {x, y, 2, 3}");
  }
}

Weighted LocalAnalysis::vhat(int j, const Weighted& f) const
{
  const Jetd wf = derivative_along(w(j), f.value);
  const Jetd lift = double(f.weight) * mul(alpha0(j), f.value);
  return {add(wf, lift), f.weight + kDegree[j]};
}

// Connection coefficients ------------------------------------------------------------

ConnectionCoefficients connection_coefficients(const LocalAnalysis& la, double t)
{
  ConnectionCoefficients cc;
  cc.point = la.base();
  cc.t = t;
  const Jetd& f = la.phi3();
  cc.a[0][0] = {Jetd::constant(1.0, f.order(), f.base()), 0};
  for (int k = 1; k < 5; ++k)
    cc.a[0][k] = {zero_like(f), 0};
  for (int j = 1; j < 5; ++j)
    for (int k = 0; k < 5; ++k)
      cc.a[j][k] = {la.alpha(j, k), kDegree[j]};
  Eigen::Matrix<double, 5, 5> a;
  for (int j = 0; j < 5; ++j)
    for (int k = 0; k < 5; ++k)
      a(j, k) = cc.a[j][k].at(t);
  cc.b = a.transpose().inverse();
  return cc;
}

ConnectionCoefficients connection_coefficients(const EngelStructure& e, const Point& p, double t,
                                               int order)
{
  return connection_coefficients(LocalAnalysis::at(e, p, order), t);
}

// Curvature ------------------------------------------------------------------------

EssentialCurvatures essential_curvatures(const LocalAnalysis& la)
{
  const auto& phi = la.phi();
  const Jetd& f = la.phi3();
  EssentialCurvatures r;
  r.rx_y2 = {phi(kX, kY, k2), 2};
  r.ry_y2 = {sub(phi(kY, kY, k2), (1.0 / 3.0) * la.ty_phi3()), 2};
  r.r2_x3 = {sub(add(phi(k2, kX, k3), (11.0 / 36.0) * (f * f)), (2.0 / 3.0) * la.tx_phi3()), 2};
  Jetd ryx = add(phi(kY, kX, k3), (1.0 / 12.0) * mul(f, la.tx_phi3()));
  ryx = sub(ryx, (1.0 / 6.0) * la.txx_phi3());
  ryx = add(ryx, (5.0 / 216.0) * (f * f * f));
  ryx = add(ryx, (1.0 / 6.0) * mul(f, phi(k2, kX, k3)));
  r.ry_x3 = {ryx, 3};
  return r;
}

EssentialCurvatures essential_curvatures(const EngelStructure& e, const Point& p, int order)
{
  return essential_curvatures(LocalAnalysis::at(e, p, order));
}

int homogeneity(const CurvatureKey& k) { return kDegree[k.b] + kDegree[k.c] - kDegree[k.a]; }

std::string curvature_name(const CurvatureKey& k)
{
  return std::string("k^") + kLabel[k.a] + "_" + kLabel[k.b] + kLabel[k.c];
}

CurvatureTable curvature_table(const LocalAnalysis& la, int max_homogeneity)
{
  require_order(la.order(), required_order(max_homogeneity), "curvature table");
  const EssentialCurvatures ess = essential_curvatures(la);
  const Weighted& rx = ess.rx_y2;
  const Weighted& ry = ess.ry_y2;
  const Weighted& r2 = ess.r2_x3;
  const Weighted& ryx = ess.ry_x3;
  const auto vx = [&](const Weighted& f) { return la.vhat(kVx, f); };
  const auto vy = [&](const Weighted& f) { return la.vhat(kVy, f); };

  CurvatureTable table;
  for (const auto& pr : kPairs)
    for (int a = 0; a < 5; ++a) {
      const CurvatureKey key{a, pr[0], pr[1]};
      const int h = homogeneity(key);
      if (h <= max_homogeneity)
        table[key] = {zero_like(la.phi3()), h};
    }
  const auto set = [&](int a, int b, int c, const Weighted& v) {
    const CurvatureKey key{a, b, c};
    if (homogeneity(key) <= max_homogeneity)
      table[key] = v;
  };

  if (max_homogeneity >= 2) {
    set(kVx, kVy, kV2, rx);
    set(kVy, kVy, kV2, ry);
    set(kV2, kVx, kV3, r2);
    set(kV2, kVy, kV3, ry);
    set(kV3, kV2, kV3, ry);
  }
  if (max_homogeneity >= 3) {
    set(kV0, kVy, kV2, 0.25 * vx(rx) + 0.25 * vy(ry));
    set(kVx, kVx, kV3, -1.5 * vx(ry) + 0.5 * vy(r2));
    set(kVy, kVx, kV3, ryx);
    set(kVx, kVy, kV3, 0.75 * vx(rx) - 0.25 * vy(ry));
    set(kVy, kVy, kV3, vx(ry));
    set(kV2, kV2, kV3, 0.5 * vx(ry) - 0.5 * vy(r2));
  }
  if (max_homogeneity >= 4) {
    set(kV0, kVx, kV3,
        -0.5 * vx(vx(ry)) - (1.0 / 3.0) * vy(vx(r2)) + 0.5 * vx(vy(r2)) + (1.0 / 3.0) * vy(ryx));
    set(kV0, kVy, kV3, 0.25 * vx(vx(rx)) + 0.25 * vx(vy(ry)));
    set(kVx, kV2, kV3,
        -0.5 * vx(vy(ry)) + 0.5 * vx(vx(rx)) + 1.5 * vy(vx(ry)) - 0.5 * vy(vy(r2)) - rx * r2);
    set(kVy, kV2, kV3,
        0.5 * vx(vx(ry)) - (1.0 / 3.0) * vy(vx(r2)) + 0.5 * vx(vy(r2)) - (2.0 / 3.0) * vy(ryx) -
          ry * r2);
  }
  if (max_homogeneity >= 5) {
    set(kV0, kV2, kV3,
        0.5 * vx(vx(vx(rx))) + 3.0 * vx(vy(vx(ry))) - 1.5 * vy(vx(vx(ry))) +
          0.5 * vy(vx(vy(r2))) - vx(vy(vy(r2))) - 0.5 * vx(vx(vy(ry))) - rx * vx(r2) -
          r2 * vx(rx) + 0.5 * (ry * vy(r2)) - 1.5 * (ry * vx(ry)) + rx * ryx);
  }
  return table;
}

CurvatureTable bracket_curvature_table(const LocalAnalysis& la, int max_homogeneity,
                                       bool zero_a30)
{
  require_order(la.order(), required_order(max_homogeneity), "curvature table");
  const Coframe& co = la.coframe();
  const auto a0 = [&](int j) { return la.alpha0(j, zero_a30); };
  CurvatureTable table;
  for (const auto& pr : kPairs) {
    const int b = pr[0], c = pr[1];
    const int hb = kDegree[b], hc = kDegree[c];
    const int top = hb + hc;
    if (top - kDegree[kV3] > max_homogeneity)
      continue;
    // [t^hb (W_b + A t d/dt), t^hc (W_c + B t d/dt)]
    //   = t^top ([W_b, W_c] - hb B W_b + hc A W_c + (W_b B - W_c A + (hc - hb) A B) t d/dt)
    const Jetd A = a0(b), B = a0(c);
    const VectorJet wb = la.w(b), wc = la.w(c);
    VectorJet v = vadd(bracket(wb, wc), double(-hb) * (B * wb));
    v = vadd(v, double(hc) * (A * wc));
    const std::array<Jetd, 4> e = co.decompose(v);
    // W-basis coordinates d^j
    std::array<Jetd, 5> d;
    d[kV3] = e[k3];
    d[kV2] = sub(e[k2], mul(la.alpha(kV3, kV2), d[kV3]));
    d[kVy] = sub(sub(e[kY], mul(la.alpha(kV2, kVy), d[kV2])), mul(la.alpha(kV3, kVy), d[kV3]));
    d[kVx] = sub(e[kX], mul(la.alpha(kV3, kVx), d[kV3]));
    const auto structure = bracket(b, c);
    for (int a = 1; a < 5; ++a) {
      const CurvatureKey key{a, b, c};
      const int h = homogeneity(key);
      if (h > max_homogeneity)
        continue;
      table[key] = {d[a] - structure[a].convert_to<double>(), h};
    }
    if (top <= max_homogeneity) {
      Jetd s = sub(derivative_along(wb, B), derivative_along(wc, A));
      s = add(s, double(hc - hb) * mul(A, B));
      for (int j = 1; j < 5; ++j)
        s = sub(s, mul(d[j], a0(j)));
      table[{kV0, b, c}] = {s, top};
    }
  }
  return table;
}

DenseVector<double> to_cochain(const CurvatureTable& table, int homogeneity_value)
{
  DenseVector<double> c = DenseVector<double>::Zero(kCochain2Dim);
  for (const auto& [key, v] : table)
    if (homogeneity(key) == homogeneity_value)
      c[cochain2_index(key.a, key.b, key.c)] = v.value.value();
  return to_cochain_convention(c);
}

double a30_from_exact_part(const LocalAnalysis& la)
{
  const CurvatureTable table = bracket_curvature_table(la, 3, true);
  return classify_cochain(to_cochain(table, 3), 3).exact_coefficients.at(0);
}

CurvatureReport curvature_report(const EngelStructure& e, const Point& p, double t,
                                 int max_homogeneity, int order)
{
  const LocalAnalysis la = LocalAnalysis::at(e, p, order);
  CurvatureReport r;
  r.point = p;
  r.t = t;
  r.order = order;
  r.essential = essential_curvatures(la);
  r.table = curvature_table(la, max_homogeneity);
  return r;
}

// Connection form -----------------------------------------------------------------

ConnectionForm connection_form(const LocalAnalysis& la)
{
  require_order(la.order(), 6, "connection form");
  ConnectionForm cf;
  cf.point = la.base();
  const Jetd& f = la.phi3();
  cf.frame_components = {(1.0 / 6.0) * f, zero_like(f), (-1.0 / 6.0) * la.ty_phi3(),
                         (-1.0 / 6.0) * sub(2.0 * la.txty_phi3(), la.tytx_phi3())};
  const Coframe& co = la.coframe();
  for (int i = 0; i < 4; ++i) {
    Jetd s = mul(cf.frame_components[0], co(0, i));
    for (int alpha = 1; alpha < 4; ++alpha)
      s = add(s, mul(cf.frame_components[alpha], co(alpha, i)));
    cf.chart_components[i] = s;
  }
  double residual = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      cf.d_varpi[i][j] = sub(partial(cf.chart_components[j], i), partial(cf.chart_components[i], j));
      residual = std::max(residual, cf.d_varpi[i][j].max_abs());
    }
  cf.d_varpi_residual = residual;
  cf.closed = residual < kClosedThreshold;
  return cf;
}

ConnectionForm connection_form(const EngelStructure& e, const Point& p, int order)
{
  return connection_form(LocalAnalysis::at(e, p, order));
}

// Tests ---------------------------------------------------------------------------

namespace {

PointInvariants invariants_at(const EngelStructure& e, const Point& p, int order)
{
  const EssentialCurvatures r = essential_curvatures(e, p, order);
  PointInvariants pi;
  pi.point = p;
  const auto all = r.all();
  for (int i = 0; i < 4; ++i) {
    pi.values[i] = all[i].at(1.0);
    pi.max_abs = std::max(pi.max_abs, std::abs(pi.values[i]));
  }
  return pi;
}

} // namespace

FlatnessResult flatness_test(const EngelStructure& e, const std::vector<Point>& points, int order,
                             double threshold)
{
  std::vector<std::future<PointInvariants>> jobs;
  jobs.reserve(points.size());
  for (const Point& p : points)
    jobs.push_back(std::async(std::launch::async, [&e, p, order] { return invariants_at(e, p, order); }));
  FlatnessResult r;
  r.threshold = threshold;
  for (auto& j : jobs) {
    r.points.push_back(j.get());
    r.max_residual = std::max(r.max_residual, r.points.back().max_abs);
  }
  r.flat = r.max_residual < threshold;
  return r;
}

UmbilicResult umbilicity_test(const EngelStructure& e, const Point& p, int order, double threshold)
{
  UmbilicResult r;
  r.invariants = invariants_at(e, p, order);
  r.threshold = threshold;
  r.umbilic = r.invariants.max_abs < threshold;
  return r;
}

std::array<Eigen::Vector4d, 4> distinguished_frame_at(const EngelStructure& e, const Point& p,
                                                      double t, int order)
{
  const LocalAnalysis la = LocalAnalysis::at(e, p, order);
  std::array<Eigen::Vector4d, 4> out;
  for (int j = 1; j < 5; ++j)
    out[frame_index(j)] = std::pow(t, kDegree[j]) * values(la.w(j));
  return out;
}

IntegrabilityResult integrability_check(const EngelStructure& e, const Point& p, PlanePair which,
                                        int order, double threshold)
{
  const LocalAnalysis la = LocalAnalysis::at(e, p, order);
  int b = kVy, c = kV2;
  if (which == PlanePair::X3)
    b = kVx, c = kV3;
  else if (which == PlanePair::Y3)
    b = kVy, c = kV3;
  Eigen::Matrix4d w;
  for (int j = 1; j < 5; ++j)
    w.col(frame_index(j)) = values(la.w(j));
  const Eigen::Vector4d d = w.partialPivLu().solve(values(bracket(la.w(b), la.w(c))));
  IntegrabilityResult r;
  r.threshold = threshold;
  int n = 0;
  for (int j = 1; j < 5; ++j)
    if (j != b && j != c)
      r.off_span[n++] = d[frame_index(j)];
  r.residual = std::max(std::abs(r.off_span[0]), std::abs(r.off_span[1]));
  r.integrable = r.residual < threshold;
  return r;
}

GlobalScaleResult global_scale_test(const EngelStructure& e, const Point& p, int order)
{
  const LocalAnalysis la = LocalAnalysis::at(e, p, order);
  const ConnectionForm cf = connection_form(la);
  GlobalScaleResult r;
  r.closed = cf.closed;
  r.d_varpi_residual = cf.d_varpi_residual;
  if (!r.closed)
    return r;
  // psi(p + xi) = sum_i xi_i int_0^1 varpi_i(p + s xi) ds
  const int n = cf.chart_components[0].order() + 1;
  Jetd psi(n, p);
  for (int i = 0; i < 4; ++i)
    psi += Jetd::displacement(i, n, p) * radial_scale(padded(cf.chart_components[i], n), 1);
  const Jetd f = exp(2.0 * psi);
  r.f = f;
  r.ty_residual = la.along(kY, f).max_abs();
  const Jetd x_log = la.along(kX, 2.0 * psi);
  r.x_log_residual = sub(x_log, (1.0 / 3.0) * la.phi3()).max_abs();
  return r;
}

} // namespace engelcr
