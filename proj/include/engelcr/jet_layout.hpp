#pragma once

#include <array>
#include <span>
#include <vector>

namespace engelcr {

using MultiIndex = std::array<int, 4>;

inline int total_degree(const MultiIndex& m) { return m[0] + m[1] + m[2] + m[3]; }

/// Graded ranking of the monomials in four variables up to kMaxOrder.
///
/// Monomials are ranked by total degree first, so the coefficient vector of a
/// jet of order n is a prefix of the one of order n + 1 and truncation is a
/// resize. The product and derivative tables below are stored in the same
/// graded order, which lets a jet of order n use a prefix of each table.
class JetLayout
{
public:
  static constexpr int kMaxOrder = 12;

  struct ProductTerm
  {
    int lhs;
    int rhs;
    int out;
  };

  static const JetLayout& instance();

  /// Number of monomials of total degree <= order.
  static int size(int order);

  const MultiIndex& exponent(int rank) const { return exponents_[rank]; }
  int degree(int rank) const { return total_degree(exponents_[rank]); }

  /// Rank of a monomial, or -1 when its degree exceeds kMaxOrder.
  int rank(const MultiIndex& m) const;

  /// All (lhs, rhs) -> out index triples with deg(out) <= order.
  std::span<const ProductTerm> products(int order) const;

  /// Rank of m + e_axis for the monomial of the given rank (-1 past kMaxOrder).
  int raised(int rank, int axis) const { return raised_[axis][rank]; }

private:
  JetLayout();

  std::vector<MultiIndex> exponents_;
  std::vector<int> lookup_;
  std::vector<ProductTerm> products_;
  std::array<int, kMaxOrder + 2> product_count_{};
  std::array<std::vector<int>, 4> raised_;
};

} // namespace engelcr
