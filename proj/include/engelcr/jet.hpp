#pragma once

// Dense truncated Taylor arithmetic in four chart variables.
//
// A Jet<Scalar> of order n at base point p stores the coefficients c_m of
//   f(p + xi) = sum_{|m| <= n} c_m xi^m + O(|xi|^{n+1})
// over the simplex of multi-indices, ranked by JetLayout. Binary operations
// require identical order and base point; use truncated() to lower an order
// explicitly.

#include "engelcr/errors.hpp"
#include "engelcr/jet_layout.hpp"

#include <Eigen/Core>

#include <cmath>
#include <string>
#include <vector>

namespace engelcr {

template <typename Scalar>
class Jet
{
public:
  using Coefficients = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Jet() : Jet(0, Point{0.0, 0.0, 0.0, 0.0}) {}

  Jet(int order, const Point& base) : order_(order), base_(base)
  {
    if (order < 0 || order > JetLayout::kMaxOrder)
      throw StructuralError("jet order " + std::to_string(order) + " outside [0, " +
                            std::to_string(JetLayout::kMaxOrder) + "]");
    coeffs_ = Coefficients::Zero(JetLayout::size(order));
  }

  static Jet constant(Scalar c, int order, const Point& base)
  {
    Jet j(order, base);
    j.coeffs_[0] = c;
    return j;
  }

  /// The coordinate function base[axis] + xi_axis.
  static Jet variable(int axis, int order, const Point& base)
  {
    Jet j = constant(Scalar(base[axis]), order, base);
    if (order >= 1)
      j.coeffs_[1 + axis] = Scalar(1);
    return j;
  }

  /// Pure displacement xi_axis (zero constant term).
  static Jet displacement(int axis, int order, const Point& base)
  {
    Jet j(order, base);
    if (order >= 1)
      j.coeffs_[1 + axis] = Scalar(1);
    return j;
  }

  int order() const noexcept { return order_; }
  const Point& base() const noexcept { return base_; }
  int size() const noexcept { return static_cast<int>(coeffs_.size()); }

  const Coefficients& coefficients() const noexcept { return coeffs_; }
  Coefficients& coefficients() noexcept { return coeffs_; }

  Scalar value() const { return coeffs_[0]; }
  Scalar operator[](int rank) const { return coeffs_[rank]; }
  Scalar& operator[](int rank) { return coeffs_[rank]; }

  /// Coefficient of xi^m; zero when |m| exceeds the order.
  Scalar coeff(const MultiIndex& m) const
  {
    if (total_degree(m) > order_)
      return Scalar(0);
    return coeffs_[JetLayout::instance().rank(m)];
  }
  void set_coeff(const MultiIndex& m, Scalar v)
  {
    if (total_degree(m) > order_)
      throw StructuralError("coefficient degree exceeds jet order");
    coeffs_[JetLayout::instance().rank(m)] = v;
  }

  /// Partial derivative d^m f / dxi^m evaluated at the base point.
  Scalar derivative(const MultiIndex& m) const
  {
    Scalar f(1);
    for (int a : m)
      for (int k = 2; k <= a; ++k)
        f *= Scalar(k);
    return f * coeff(m);
  }

  Jet truncated(int order) const
  {
    if (order > order_)
      throw StructuralError("cannot raise jet order " + std::to_string(order_) + " to " +
                            std::to_string(order));
    Jet j(order, base_);
    j.coeffs_ = coeffs_.head(JetLayout::size(order));
    return j;
  }

  /// Largest absolute coefficient.
  Scalar max_abs() const { return coeffs_.cwiseAbs().maxCoeff(); }

  /// Taylor polynomial evaluated at base + displacement.
  Scalar evaluate_displacement(const Point& xi) const
  {
    const auto& layout = JetLayout::instance();
    Scalar s(0);
    for (int r = 0; r < size(); ++r) {
      const auto& m = layout.exponent(r);
      Scalar term = coeffs_[r];
      for (int a = 0; a < 4; ++a)
        for (int k = 0; k < m[a]; ++k)
          term *= Scalar(xi[a]);
      s += term;
    }
    return s;
  }

  Jet operator-() const
  {
    Jet j = *this;
    j.coeffs_ = -coeffs_;
    return j;
  }

  Jet& operator+=(const Jet& o)
  {
    check_compatible(o);
    coeffs_ += o.coeffs_;
    return *this;
  }
  Jet& operator-=(const Jet& o)
  {
    check_compatible(o);
    coeffs_ -= o.coeffs_;
    return *this;
  }
  Jet& operator*=(Scalar s)
  {
    coeffs_ *= s;
    return *this;
  }
  Jet& operator+=(Scalar s)
  {
    coeffs_[0] += s;
    return *this;
  }
  Jet& operator-=(Scalar s)
  {
    coeffs_[0] -= s;
    return *this;
  }

  void check_compatible(const Jet& o) const
  {
    if (order_ != o.order_)
      throw StructuralError("jet order mismatch: " + std::to_string(order_) + " vs " +
                            std::to_string(o.order_));
    if (base_ != o.base_)
      throw StructuralError("jet base point mismatch: " + format_point(base_) + " vs " +
                            format_point(o.base_));
  }

private:
  int order_;
  Point base_;
  Coefficients coeffs_;
};

using Jetd = Jet<double>;

template <typename Scalar>
Jet<Scalar> operator+(Jet<Scalar> a, const Jet<Scalar>& b)
{
  return a += b;
}
template <typename Scalar>
Jet<Scalar> operator-(Jet<Scalar> a, const Jet<Scalar>& b)
{
  return a -= b;
}
template <typename Scalar>
Jet<Scalar> operator+(Jet<Scalar> a, Scalar s)
{
  return a += s;
}
template <typename Scalar>
Jet<Scalar> operator+(Scalar s, Jet<Scalar> a)
{
  return a += s;
}
template <typename Scalar>
Jet<Scalar> operator-(Jet<Scalar> a, Scalar s)
{
  return a -= s;
}
template <typename Scalar>
Jet<Scalar> operator-(Scalar s, const Jet<Scalar>& a)
{
  return (-a) += s;
}
template <typename Scalar>
Jet<Scalar> operator*(Jet<Scalar> a, Scalar s)
{
  return a *= s;
}
template <typename Scalar>
Jet<Scalar> operator*(Scalar s, Jet<Scalar> a)
{
  return a *= s;
}
template <typename Scalar>
Jet<Scalar> operator/(Jet<Scalar> a, Scalar s)
{
  return a *= Scalar(1) / s;
}

/// Truncated product; discards degrees above the common order.
template <typename Scalar>
Jet<Scalar> operator*(const Jet<Scalar>& a, const Jet<Scalar>& b)
{
  a.check_compatible(b);
  Jet<Scalar> r(a.order(), a.base());
  const auto& x = a.coefficients();
  const auto& y = b.coefficients();
  auto& z = r.coefficients();
  for (const auto& t : JetLayout::instance().products(a.order()))
    z[t.out] += x[t.lhs] * y[t.rhs];
  return r;
}

template <typename Scalar>
Jet<Scalar>& operator*=(Jet<Scalar>& a, const Jet<Scalar>& b)
{
  a = a * b;
  return a;
}

namespace detail {

// sum_k weights[k] * h^k for a jet h with zero constant term.
template <typename Scalar>
Jet<Scalar> nilpotent_series(const Jet<Scalar>& h, const std::vector<Scalar>& weights)
{
  Jet<Scalar> r = Jet<Scalar>::constant(weights[0], h.order(), h.base());
  Jet<Scalar> power = Jet<Scalar>::constant(Scalar(1), h.order(), h.base());
  for (int k = 1; k <= h.order() && k < static_cast<int>(weights.size()); ++k) {
    power = power * h;
    r += weights[k] * power;
  }
  return r;
}

template <typename Scalar>
Jet<Scalar> nilpotent_part(const Jet<Scalar>& a)
{
  Jet<Scalar> h = a;
  h[0] = Scalar(0);
  return h;
}

} // namespace detail

/// Multiplicative inverse; throws SingularJet on a zero constant term.
template <typename Scalar>
Jet<Scalar> invert(const Jet<Scalar>& a)
{
  using std::abs;
  const Scalar a0 = a.value();
  if (a0 == Scalar(0) || !(abs(a0) > Scalar(0)))
    throw SingularJet("jet with zero constant term has no inverse");
  std::vector<Scalar> w(a.order() + 1);
  Scalar c = Scalar(1) / a0;
  for (int k = 0; k <= a.order(); ++k) {
    w[k] = c;
    c *= -Scalar(1) / a0;
  }
  return detail::nilpotent_series(detail::nilpotent_part(a), w);
}

template <typename Scalar>
Jet<Scalar> operator/(const Jet<Scalar>& a, const Jet<Scalar>& b)
{
  return a * invert(b);
}

enum class Analytic { Exp, Log, Sqrt, Sin, Cos };

/// Taylor composition f o a, truncated to the order of a.
template <typename Scalar>
Jet<Scalar> compose(Analytic f, const Jet<Scalar>& a)
{
  using std::cos;
  using std::exp;
  using std::log;
  using std::sin;
  using std::sqrt;
  const Scalar a0 = a.value();
  const int n = a.order();
  std::vector<Scalar> w(n + 1);
  // w[k] = f^{(k)}(a0) / k!
  switch (f) {
  case Analytic::Exp: {
    Scalar e = exp(a0), fact(1);
    for (int k = 0; k <= n; ++k) {
      if (k > 0)
        fact *= Scalar(k);
      w[k] = e / fact;
    }
    break;
  }
  case Analytic::Log: {
    if (!(a0 > Scalar(0)))
      throw DomainError("log of a jet with non-positive constant term");
    w[0] = log(a0);
    Scalar p = Scalar(1);
    for (int k = 1; k <= n; ++k) {
      p /= a0;
      w[k] = ((k % 2 == 1) ? Scalar(1) : Scalar(-1)) * p / Scalar(k);
    }
    break;
  }
  case Analytic::Sqrt: {
    if (!(a0 > Scalar(0)))
      throw DomainError("sqrt of a jet with non-positive constant term");
    // sqrt(a0) * binom(1/2, k) / a0^k
    Scalar binom(1), scale = sqrt(a0);
    for (int k = 0; k <= n; ++k) {
      w[k] = binom * scale;
      binom *= (Scalar(0.5) - Scalar(k)) / Scalar(k + 1);
      scale /= a0;
    }
    break;
  }
  case Analytic::Sin:
  case Analytic::Cos: {
    const Scalar s = sin(a0), c = cos(a0);
    // derivatives cycle: sin -> cos -> -sin -> -cos
    const std::array<Scalar, 4> sin_cycle{s, c, -s, -c};
    const std::array<Scalar, 4> cos_cycle{c, -s, -c, s};
    const auto& cyc = f == Analytic::Sin ? sin_cycle : cos_cycle;
    Scalar fact(1);
    for (int k = 0; k <= n; ++k) {
      if (k > 0)
        fact *= Scalar(k);
      w[k] = cyc[k % 4] / fact;
    }
    break;
  }
  }
  return detail::nilpotent_series(detail::nilpotent_part(a), w);
}

template <typename Scalar>
Jet<Scalar> exp(const Jet<Scalar>& a)
{
  return compose(Analytic::Exp, a);
}
template <typename Scalar>
Jet<Scalar> log(const Jet<Scalar>& a)
{
  return compose(Analytic::Log, a);
}
template <typename Scalar>
Jet<Scalar> sqrt(const Jet<Scalar>& a)
{
  return compose(Analytic::Sqrt, a);
}
template <typename Scalar>
Jet<Scalar> sin(const Jet<Scalar>& a)
{
  return compose(Analytic::Sin, a);
}
template <typename Scalar>
Jet<Scalar> cos(const Jet<Scalar>& a)
{
  return compose(Analytic::Cos, a);
}

/// d/dxi_axis; the result has order one less. Throws OrderExhausted at order 0.
template <typename Scalar>
Jet<Scalar> partial(const Jet<Scalar>& a, int axis)
{
  if (a.order() == 0)
    throw OrderExhausted("cannot differentiate a jet of order 0");
  if (axis < 0 || axis > 3)
    throw StructuralError("axis out of range");
  const auto& layout = JetLayout::instance();
  Jet<Scalar> r(a.order() - 1, a.base());
  for (int k = 0; k < r.size(); ++k) {
    const int src = layout.raised(k, axis);
    r[k] = Scalar(layout.exponent(k)[axis] + 1) * a[src];
  }
  return r;
}

/// Antiderivative in xi_axis vanishing on the hyperplane xi_axis = 0; raises the order by one.
template <typename Scalar>
Jet<Scalar> integrate(const Jet<Scalar>& a, int axis)
{
  if (a.order() + 1 > JetLayout::kMaxOrder)
    throw StructuralError("antiderivative would exceed the maximal jet order");
  const auto& layout = JetLayout::instance();
  Jet<Scalar> r(a.order() + 1, a.base());
  for (int k = 0; k < a.size(); ++k) {
    const int dst = layout.raised(k, axis);
    r[dst] = a[k] / Scalar(layout.exponent(k)[axis] + 1);
  }
  return r;
}

/// Radial homotopy: for h with h[m] of degree d, returns h[m] / (d + shift).
template <typename Scalar>
Jet<Scalar> radial_scale(const Jet<Scalar>& a, int shift)
{
  const auto& layout = JetLayout::instance();
  Jet<Scalar> r = a;
  for (int k = 0; k < a.size(); ++k)
    r[k] /= Scalar(layout.degree(k) + shift);
  return r;
}

/// The jet of g(eta) = f(M eta) in new displacement variables eta.
template <typename Scalar>
Jet<Scalar> compose_linear(const Jet<Scalar>& f, const Eigen::Matrix<Scalar, 4, 4>& m)
{
  const int n = f.order();
  const auto& layout = JetLayout::instance();
  std::array<std::vector<Jet<Scalar>>, 4> powers;
  for (int i = 0; i < 4; ++i) {
    Jet<Scalar> lin(n, f.base());
    if (n >= 1)
      for (int j = 0; j < 4; ++j)
        lin[1 + j] = m(i, j);
    powers[i].push_back(Jet<Scalar>::constant(Scalar(1), n, f.base()));
    for (int k = 1; k <= n; ++k)
      powers[i].push_back(powers[i].back() * lin);
  }
  Jet<Scalar> g(n, f.base());
  for (int r = 0; r < f.size(); ++r) {
    if (f[r] == Scalar(0))
      continue;
    const auto& e = layout.exponent(r);
    Jet<Scalar> term = powers[0][e[0]];
    for (int i = 1; i < 4; ++i)
      if (e[i] > 0)
        term = term * powers[i][e[i]];
    g += f[r] * term;
  }
  return g;
}

} // namespace engelcr
