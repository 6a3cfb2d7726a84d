#pragma once

#include "engelcr/jet.hpp"

#include <map>
#include <string>

namespace engelcr {

/// Sparse real polynomial in the four chart variables.
class Polynomial
{
public:
  Polynomial() = default;
  Polynomial(double c) { add_term({0, 0, 0, 0}, c); }

  static Polynomial variable(int axis);
  static Polynomial monomial(const MultiIndex& m, double c = 1.0);

  void add_term(const MultiIndex& m, double c);
  const std::map<MultiIndex, double>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;

  double evaluate(const Point& x) const;

  /// Jet of the polynomial composed with the given coordinate jets.
  Jetd evaluate(const std::array<Jetd, 4>& coords) const;

  Polynomial derivative(int axis) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator*=(double s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a += -1.0 * b; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  std::string to_string() const;

private:
  std::map<MultiIndex, double> terms_;
};

} // namespace engelcr
