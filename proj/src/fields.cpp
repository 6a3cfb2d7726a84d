#include "engelcr/fields.hpp"

#include <Eigen/LU>

#include <algorithm>

namespace engelcr {

Coords seed_coordinates(const Point& p, int order)
{
  return {Jetd::variable(0, order, p), Jetd::variable(1, order, p), Jetd::variable(2, order, p),
          Jetd::variable(3, order, p)};
}

ScalarField ScalarField::from_expression(ScalarExpr expr)
{
  return ScalarField([expr = std::move(expr)](const Point& p, int order) {
    return expr(seed_coordinates(p, order));
  });
}

ScalarField ScalarField::from_polynomial(const Polynomial& poly)
{
  return from_expression([poly](const Coords& c) { return poly.evaluate(c); });
}

ScalarField ScalarField::constant(double c)
{
  return ScalarField([c](const Point& p, int order) { return Jetd::constant(c, order, p); });
}

ScalarField ScalarField::taylor(const Jetd& j)
{
  return ScalarField([j](const Point& p, int order) {
    const auto& layout = JetLayout::instance();
    std::array<std::vector<Jetd>, 4> powers;
    for (int a = 0; a < 4; ++a) {
      Jetd d = Jetd::displacement(a, order, p);
      d += p[a] - j.base()[a];
      powers[a].push_back(Jetd::constant(1.0, order, p));
      for (int k = 1; k <= j.order(); ++k)
        powers[a].push_back(powers[a].back() * d);
    }
    Jetd out(order, p);
    for (int r = 0; r < j.size(); ++r) {
      if (j[r] == 0.0)
        continue;
      const auto& m = layout.exponent(r);
      Jetd t = powers[0][m[0]];
      for (int a = 1; a < 4; ++a)
        if (m[a] > 0)
          t = t * powers[a][m[a]];
      out += j[r] * t;
    }
    return out;
  });
}

VectorField VectorField::from_expression(VectorExpr expr)
{
  return VectorField([expr = std::move(expr)](const Point& p, int order) {
    return expr(seed_coordinates(p, order));
  });
}

VectorField VectorField::from_polynomials(const std::array<Polynomial, 4>& components)
{
  return from_expression([components](const Coords& c) {
    return VectorJet{components[0].evaluate(c), components[1].evaluate(c),
                     components[2].evaluate(c), components[3].evaluate(c)};
  });
}

VectorField VectorField::from_components(const std::array<ScalarField, 4>& components)
{
  return VectorField([components](const Point& p, int order) {
    return VectorJet{components[0](p, order), components[1](p, order), components[2](p, order),
                     components[3](p, order)};
  });
}

VectorField VectorField::coordinate(int axis)
{
  return VectorField([axis](const Point& p, int order) {
    VectorJet v{Jetd(order, p), Jetd(order, p), Jetd(order, p), Jetd(order, p)};
    v[axis][0] = 1.0;
    return v;
  });
}

ScalarField VectorField::component(int i) const
{
  return ScalarField([eval = eval_, i](const Point& p, int order) { return eval(p, order)[i]; });
}

Eigen::Vector4d VectorField::value(const Point& p) const { return values(eval_(p, 0)); }

int order_of(const VectorJet& v)
{
  return std::min({v[0].order(), v[1].order(), v[2].order(), v[3].order()});
}

VectorJet truncated(const VectorJet& v, int order)
{
  return {v[0].truncated(order), v[1].truncated(order), v[2].truncated(order),
          v[3].truncated(order)};
}

Eigen::Vector4d values(const VectorJet& v)
{
  return {v[0].value(), v[1].value(), v[2].value(), v[3].value()};
}

VectorJet operator+(const VectorJet& a, const VectorJet& b)
{
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}

VectorJet operator-(const VectorJet& a, const VectorJet& b)
{
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

VectorJet operator*(double s, const VectorJet& v)
{
  return {s * v[0], s * v[1], s * v[2], s * v[3]};
}

VectorJet operator*(const Jetd& s, const VectorJet& v)
{
  const int n = std::min(s.order(), order_of(v));
  const Jetd sn = s.truncated(n);
  return {sn * v[0].truncated(n), sn * v[1].truncated(n), sn * v[2].truncated(n),
          sn * v[3].truncated(n)};
}

VectorJet bracket(const VectorJet& a, const VectorJet& b)
{
  const int n = std::min(order_of(a), order_of(b));
  if (n == 0)
    throw OrderExhausted("bracket of order-0 vector jets");
  const VectorJet at = truncated(a, n - 1);
  const VectorJet bt = truncated(b, n - 1);
  std::array<std::array<Jetd, 4>, 4> da, db; // d[j][i] = d_j of component i
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) {
      da[j][i] = partial(a[i].truncated(n), j);
      db[j][i] = partial(b[i].truncated(n), j);
    }
  VectorJet r;
  for (int i = 0; i < 4; ++i) {
    Jetd s(n - 1, a[0].base());
    for (int j = 0; j < 4; ++j)
      s += at[j] * db[j][i] - bt[j] * da[j][i];
    r[i] = std::move(s);
  }
  return r;
}

Jetd derivative_along(const VectorJet& v, const Jetd& f)
{
  if (f.order() == 0)
    throw OrderExhausted("derivative of an order-0 jet");
  const int n = std::min(order_of(v), f.order() - 1);
  Jetd s(n, f.base());
  for (int j = 0; j < 4; ++j)
    s += v[j].truncated(n) * partial(f, j).truncated(n);
  return s;
}

namespace {

JetMatrix multiply(const JetMatrix& a, const JetMatrix& b)
{
  JetMatrix r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Jetd s = a[i][0] * b[0][j];
      for (int k = 1; k < 4; ++k)
        s += a[i][k] * b[k][j];
      r[i][j] = std::move(s);
    }
  return r;
}

JetMatrix multiply(const Eigen::Matrix4d& a, const JetMatrix& b)
{
  JetMatrix r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Jetd s = a(i, 0) * b[0][j];
      for (int k = 1; k < 4; ++k)
        s += a(i, k) * b[k][j];
      r[i][j] = std::move(s);
    }
  return r;
}

} // namespace

JetMatrix invert(const JetMatrix& m, double det_threshold)
{
  const int n = m[0][0].order();
  const Point& base = m[0][0].base();
  Eigen::Matrix4d m0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      m0(i, j) = m[i][j].value();
  const Eigen::PartialPivLU<Eigen::Matrix4d> lu(m0);
  const double det = lu.determinant();
  if (!(std::abs(det) > det_threshold))
    throw SingularJet("constant part of jet matrix is singular (det " + std::to_string(det) + ")");
  const Eigen::Matrix4d m0inv = lu.inverse();

  // m = m0 (I + m0^{-1} N) with N nilpotent, so
  // m^{-1} = sum_k (-m0^{-1} N)^k m0^{-1}, terminating after n terms.
  JetMatrix nil = m;
  for (auto& row : nil)
    for (auto& e : row)
      e[0] = 0.0;
  JetMatrix k = multiply(m0inv, nil);
  for (auto& row : k)
    for (auto& e : row)
      e *= -1.0;

  JetMatrix sum, term;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      sum[i][j] = Jetd::constant(i == j ? 1.0 : 0.0, n, base);
      term[i][j] = sum[i][j];
    }
  for (int p = 1; p <= n; ++p) {
    term = multiply(term, k);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        sum[i][j] += term[i][j];
  }
  JetMatrix r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Jetd s = m0inv(0, j) * sum[i][0];
      for (int q = 1; q < 4; ++q)
        s += m0inv(q, j) * sum[i][q];
      r[i][j] = std::move(s);
    }
  return r;
}

VectorField lie_bracket(const VectorField& a, const VectorField& b)
{
  return VectorField([a, b](const Point& p, int order) { return bracket(a(p, order + 1), b(p, order + 1)); });
}

VectorField scaled(const ScalarField& g, const VectorField& v)
{
  return VectorField([g, v](const Point& p, int order) { return g(p, order) * v(p, order); });
}

const VectorField& Frame::operator[](int i) const
{
  switch (i) {
  case kX:
    return tx;
  case kY:
    return ty;
  case k2:
    return t2;
  default:
    return t3;
  }
}

Frame adapted_frame(const VectorField& x, const VectorField& y)
{
  VectorField t2 = lie_bracket(x, y);
  VectorField t3 = lie_bracket(x, t2);
  return Frame{x, y, std::move(t2), std::move(t3), false};
}

FrameJets FrameJets::from_pair(const VectorJet& x, const VectorJet& y)
{
  const int n = std::min(order_of(x), order_of(y));
  if (n < 2)
    throw OrderExhausted("adapted frame needs vector jets of order >= 2");
  const VectorJet xn = truncated(x, n);
  const VectorJet t2 = bracket(xn, truncated(y, n));
  const VectorJet t3 = bracket(xn, t2);
  FrameJets f;
  f.order = n - 2;
  f.base = x[0].base();
  f.t = {truncated(xn, n - 2), truncated(y, n - 2), truncated(t2, n - 2), t3};
  return f;
}

Eigen::Matrix4d FrameJets::matrix() const
{
  Eigen::Matrix4d m;
  for (int c = 0; c < 4; ++c)
    m.col(c) = values(t[c]);
  return m;
}

Jetd Coframe::pair(int alpha, const VectorJet& v) const
{
  const int n = std::min(order(), order_of(v));
  Jetd s(n, v[0].base());
  for (int i = 0; i < 4; ++i)
    s += rows_[alpha][i].truncated(n) * v[i].truncated(n);
  return s;
}

std::array<Jetd, 4> Coframe::decompose(const VectorJet& v) const
{
  return {pair(0, v), pair(1, v), pair(2, v), pair(3, v)};
}

Coframe dual_coframe(const FrameJets& frame)
{
  JetMatrix m; // columns are frame vectors
  for (int i = 0; i < 4; ++i)
    for (int c = 0; c < 4; ++c)
      m[i][c] = frame.t[c][i];
  const double det = frame.matrix().determinant();
  try {
    return Coframe(invert(m, kDegeneracyThreshold), det);
  } catch (const SingularJet&) {
    throw EngelDegenerate(frame.base, "frame determinant " + std::to_string(det));
  }
}

Coframe dual_coframe(const Frame& frame, const Point& p, int order)
{
  return dual_coframe(FrameJets::from_pair(frame.tx(p, order + 2), frame.ty(p, order + 2)));
}

StructureFunctions StructureFunctions::compute(const FrameJets& frame, const Coframe& coframe)
{
  StructureFunctions s;
  const int n = frame.order - 1;
  for (int b = 0; b < 4; ++b)
    for (int c = 0; c < 4; ++c) {
      if (b == c) {
        for (int a = 0; a < 4; ++a)
          s.phi_[a][b][c] = Jetd(n, frame.base);
        continue;
      }
      if (c < b) {
        for (int a = 0; a < 4; ++a)
          s.phi_[a][b][c] = -s.phi_[a][c][b];
        continue;
      }
      const VectorJet br = bracket(frame.t[b], frame.t[c]);
      for (int a = 0; a < 4; ++a)
        s.phi_[a][b][c] = coframe.pair(a, br);
    }
  return s;
}

StructureFunctions structure_functions(const Frame& frame, const Point& p, int order)
{
  const FrameJets fj = FrameJets::from_pair(frame.tx(p, order + 3), frame.ty(p, order + 3));
  return StructureFunctions::compute(fj, dual_coframe(fj));
}

Coords apply(const PolynomialMap& map, const Coords& c)
{
  return {map[0].evaluate(c), map[1].evaluate(c), map[2].evaluate(c), map[3].evaluate(c)};
}

VectorExpr push_forward(const VectorExpr& v, const PolynomialMap& phi, const PolynomialMap& phi_inverse)
{
  std::array<std::array<Polynomial, 4>, 4> jacobian; // [i][j] = d_j phi_i
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      jacobian[i][j] = phi[i].derivative(j);
  return [v, phi_inverse, jacobian](const Coords& c) {
    const Coords q = apply(phi_inverse, c);
    const VectorJet vq = v(q);
    VectorJet w;
    for (int i = 0; i < 4; ++i) {
      Jetd s(c[0].order(), c[0].base());
      for (int j = 0; j < 4; ++j)
        s += jacobian[i][j].evaluate(q) * vq[j];
      w[i] = std::move(s);
    }
    return w;
  };
}

Point integrate_flow(const VectorField& v, const Point& start, double duration, int steps)
{
  const double h = duration / steps;
  auto f = [&v](const Eigen::Vector4d& x) { return v.value({x[0], x[1], x[2], x[3]}); };
  Eigen::Vector4d x(start[0], start[1], start[2], start[3]);
  for (int s = 0; s < steps; ++s) {
    const Eigen::Vector4d k1 = f(x);
    const Eigen::Vector4d k2 = f(x + 0.5 * h * k1);
    const Eigen::Vector4d k3 = f(x + 0.5 * h * k2);
    const Eigen::Vector4d k4 = f(x + h * k3);
    x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return {x[0], x[1], x[2], x[3]};
}

} // namespace engelcr
