#include "engelcr/polynomial.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace engelcr {

Polynomial Polynomial::variable(int axis)
{
  MultiIndex m{0, 0, 0, 0};
  m[axis] = 1;
  return monomial(m);
}

Polynomial Polynomial::monomial(const MultiIndex& m, double c)
{
  Polynomial p;
  p.add_term(m, c);
  return p;
}

void Polynomial::add_term(const MultiIndex& m, double c)
{
  for (int a : m)
    if (a < 0)
      throw StructuralError("negative exponent in polynomial term");
  if (c == 0.0)
    return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0)
      terms_.erase(it);
  }
}

int Polynomial::degree() const
{
  int d = -1;
  for (const auto& [m, c] : terms_)
    d = std::max(d, total_degree(m));
  return d;
}

double Polynomial::evaluate(const Point& x) const
{
  double s = 0.0;
  for (const auto& [m, c] : terms_) {
    double t = c;
    for (int a = 0; a < 4; ++a)
      t *= std::pow(x[a], m[a]);
    s += t;
  }
  return s;
}

Jetd Polynomial::evaluate(const std::array<Jetd, 4>& coords) const
{
  const int n = coords[0].order();
  const Point& base = coords[0].base();
  Jetd out(n, base);
  if (terms_.empty())
    return out;
  std::array<int, 4> max_exp{0, 0, 0, 0};
  for (const auto& [m, c] : terms_)
    for (int a = 0; a < 4; ++a)
      max_exp[a] = std::max(max_exp[a], m[a]);
  std::array<std::vector<Jetd>, 4> powers;
  for (int a = 0; a < 4; ++a) {
    powers[a].push_back(Jetd::constant(1.0, n, base));
    for (int k = 1; k <= max_exp[a]; ++k)
      powers[a].push_back(powers[a].back() * coords[a]);
  }
  for (const auto& [m, c] : terms_) {
    Jetd t = powers[0][m[0]];
    for (int a = 1; a < 4; ++a)
      if (m[a] > 0)
        t = t * powers[a][m[a]];
    out += c * t;
  }
  return out;
}

Polynomial Polynomial::derivative(int axis) const
{
  Polynomial d;
  for (const auto& [m, c] : terms_) {
    if (m[axis] == 0)
      continue;
    MultiIndex e = m;
    --e[axis];
    d.add_term(e, c * m[axis]);
  }
  return d;
}

Polynomial& Polynomial::operator+=(const Polynomial& o)
{
  for (const auto& [m, c] : o.terms_)
    add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator*=(double s)
{
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_)
    c *= s;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
  Polynomial r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_)
      r.add_term({ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2], ma[3] + mb[3]}, ca * cb);
  return r;
}

std::string Polynomial::to_string() const
{
  if (terms_.empty())
    return "0";
  std::ostringstream os;
  bool first = true;
  static const char* names[] = {"x", "y", "u1", "u2"};
  for (const auto& [m, c] : terms_) {
    if (!first)
      os << (c < 0 ? " - " : " + ");
    else if (c < 0)
      os << "-";
    first = false;
    os << std::abs(c);
    for (int a = 0; a < 4; ++a)
      if (m[a] > 0)
        os << "*" << names[a] << (m[a] > 1 ? "^" + std::to_string(m[a]) : "");
  }
  return os.str();
}

} // namespace engelcr
