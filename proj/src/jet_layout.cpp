#include "engelcr/jet_layout.hpp"

#include "engelcr/errors.hpp"

#include <algorithm>
#include <cstdio>

namespace engelcr {

namespace {

constexpr int kSide = JetLayout::kMaxOrder + 1;

int binomial(int n, int k)
{
  if (k < 0 || k > n)
    return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i)
    r = r * (n - k + i) / i;
  return static_cast<int>(r);
}

int flat(const MultiIndex& m)
{
  return ((m[0] * kSide + m[1]) * kSide + m[2]) * kSide + m[3];
}

} // namespace

std::string format_point(const Point& p)
{
  char buf[128];
  std::snprintf(buf, sizeof buf, "(%.6g, %.6g, %.6g, %.6g)", p[0], p[1], p[2], p[3]);
  return buf;
}

EngelDegenerate::EngelDegenerate(const Point& p, const std::string& detail)
  : Error("Engel condition fails at " + format_point(p) + (detail.empty() ? "" : ": " + detail)),
    point_(p)
{
}

NotD0Aligned::NotD0Aligned(const Point& p, double residual)
  : Error("Y is not a section of D0 at " + format_point(p) + " (residual " +
          std::to_string(residual) + ")"),
    point_(p), residual_(residual)
{
}

int JetLayout::size(int order) { return binomial(order + 4, 4); }

const JetLayout& JetLayout::instance()
{
  static const JetLayout layout;
  return layout;
}

JetLayout::JetLayout()
{
  // Graded order; inside a degree, lexicographic with x first.
  for (int d = 0; d <= kMaxOrder; ++d)
    for (int a = d; a >= 0; --a)
      for (int b = d - a; b >= 0; --b)
        for (int c = d - a - b; c >= 0; --c)
          exponents_.push_back({a, b, c, d - a - b - c});

  lookup_.assign(kSide * kSide * kSide * kSide, -1);
  for (int r = 0; r < static_cast<int>(exponents_.size()); ++r)
    lookup_[flat(exponents_[r])] = r;

  const int n = static_cast<int>(exponents_.size());
  for (int axis = 0; axis < 4; ++axis) {
    raised_[axis].assign(n, -1);
    for (int r = 0; r < n; ++r) {
      MultiIndex m = exponents_[r];
      ++m[axis];
      raised_[axis][r] = rank(m);
    }
  }

  // Products grouped by output degree so each order uses a prefix.
  for (int d = 0; d <= kMaxOrder; ++d) {
    product_count_[d] = static_cast<int>(products_.size());
    for (int i = 0; i < n; ++i) {
      const int di = degree(i);
      if (di > d)
        break;
      for (int j = 0; j < n; ++j) {
        const int dj = degree(j);
        if (di + dj > d)
          break;
        if (di + dj != d)
          continue;
        const auto& a = exponents_[i];
        const auto& b = exponents_[j];
        products_.push_back({i, j, rank({a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]})});
      }
    }
  }
  product_count_[kMaxOrder + 1] = static_cast<int>(products_.size());
}

int JetLayout::rank(const MultiIndex& m) const
{
  for (int a : m)
    if (a < 0)
      return -1;
  if (total_degree(m) > kMaxOrder)
    return -1;
  return lookup_[flat(m)];
}

std::span<const JetLayout::ProductTerm> JetLayout::products(int order) const
{
  return {products_.data(), static_cast<size_t>(product_count_[order + 1])};
}

} // namespace engelcr
