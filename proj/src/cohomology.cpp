#include "engelcr/cohomology.hpp"

#include "engelcr/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <sstream>

namespace engelcr {

namespace {

int pair_position(int alpha, int beta)
{
  for (int p = 0; p < 6; ++p)
    if (kPairs[p][0] == alpha && kPairs[p][1] == beta)
      return p;
  return -1;
}

// phi(V_alpha, V_beta) for a 2-cochain vector.
std::array<Rational, 5> evaluate2(const RationalVector& phi, int alpha, int beta)
{
  std::array<Rational, 5> out{};
  if (alpha == beta)
    return out;
  for (int a = 0; a < 5; ++a) {
    const Cochain2Slot s = cochain2_slot(a, alpha, beta);
    out[a] = s.sign * phi[s.index];
  }
  return out;
}

std::array<Rational, 5> bracket_vector(int a, const std::array<Rational, 5>& v)
{
  std::array<Rational, 5> out{};
  for (int b = 0; b < 5; ++b) {
    if (v[b] == 0)
      continue;
    const auto br = bracket(a, b);
    for (int c = 0; c < 5; ++c)
      out[c] += v[b] * br[c];
  }
  return out;
}

RationalVector unit(int size, int index)
{
  RationalVector v = RationalVector::Zero(size);
  v[index] = 1;
  return v;
}

RationalMatrix restrict_to(const RationalMatrix& basis, const std::vector<int>& coords)
{
  // Columns of basis projected to the given coordinates (others zeroed).
  RationalMatrix out = RationalMatrix::Zero(basis.rows(), basis.cols());
  for (int c : coords)
    out.row(c) = basis.row(c);
  return out;
}

RationalMatrix hstack(const RationalMatrix& a, const RationalMatrix& b)
{
  RationalMatrix m(a.rows(), a.cols() + b.cols());
  if (a.cols() > 0)
    m.leftCols(a.cols()) = a;
  if (b.cols() > 0)
    m.rightCols(b.cols()) = b;
  return m;
}

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b)
{
  RationalMatrix out = RationalMatrix::Zero(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0)
        continue;
      for (int j = 0; j < b.cols(); ++j)
        out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

bool is_zero(const RationalMatrix& m)
{
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0)
        return false;
  return true;
}

LinearCondition condition(std::string text, std::vector<std::tuple<int, int, int, int>> terms)
{
  LinearCondition c;
  c.text = std::move(text);
  for (const auto& [coef, a, alpha, beta] : terms)
    c.terms.push_back({cochain2_index(a, alpha, beta), Rational(coef)});
  return c;
}

} // namespace

Cochain2Slot cochain2_slot(int a, int alpha, int beta)
{
  if (alpha == beta)
    throw StructuralError("cochain slot with equal arguments");
  if (alpha < beta)
    return {pair_position(alpha, beta) * 5 + a, 1};
  return {pair_position(beta, alpha) * 5 + a, -1};
}

int cochain2_index(int a, int alpha, int beta) { return cochain2_slot(a, alpha, beta).index; }

int cochain1_index(int a, int alpha) { return (alpha - 1) * 5 + a; }

int cochain2_homogeneity(int index)
{
  const auto& pr = kPairs[index / 5];
  return kDegree[pr[0]] + kDegree[pr[1]] - kDegree[index % 5];
}

std::string cochain2_name(int index)
{
  const auto& pr = kPairs[index / 5];
  return std::string("phi^") + kLabel[index % 5] + "_" + kLabel[pr[0]] + kLabel[pr[1]];
}

std::array<Rational, 5> bracket(int a, int b)
{
  std::array<Rational, 5> out{};
  auto set = [&](int x, int y, int c, int coef) {
    if (a == x && b == y)
      out[c] = coef;
    if (a == y && b == x)
      out[c] = -coef;
  };
  set(kVx, kVy, kV2, 1);
  set(kVx, kV2, kV3, 1);
  for (int j = 1; j < 5; ++j)
    set(kV0, j, j, -kDegree[j]);
  return out;
}

Rational jacobi_defect()
{
  Rational worst = 0;
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b)
      for (int c = 0; c < 5; ++c) {
        std::array<Rational, 5> sum{};
        const auto t1 = bracket_vector(a, bracket(b, c));
        const auto t2 = bracket_vector(b, bracket(c, a));
        const auto t3 = bracket_vector(c, bracket(a, b));
        for (int k = 0; k < 5; ++k) {
          sum[k] = t1[k] + t2[k] + t3[k];
          worst = std::max(worst, abs(sum[k]));
        }
      }
  return worst;
}

RationalMatrix coboundary1()
{
  RationalMatrix d = RationalMatrix::Zero(kCochain2Dim, kCochain1Dim);
  for (int col = 0; col < kCochain1Dim; ++col) {
    const int alpha0 = col / 5 + 1, a0 = col % 5;
    // psi(V_alpha) = delta_{alpha alpha0} V_a0
    auto psi = [&](int alpha) {
      std::array<Rational, 5> v{};
      if (alpha == alpha0)
        v[a0] = 1;
      return v;
    };
    for (int p = 0; p < 6; ++p) {
      const int x = kPairs[p][0], y = kPairs[p][1];
      const auto t1 = bracket_vector(x, psi(y));
      const auto t2 = bracket_vector(y, psi(x));
      const auto xy = bracket(x, y);
      std::array<Rational, 5> t3{};
      for (int c = 1; c < 5; ++c)
        if (xy[c] != 0) {
          const auto pc = psi(c);
          for (int k = 0; k < 5; ++k)
            t3[k] += xy[c] * pc[k];
        }
      for (int k = 0; k < 5; ++k)
        d(p * 5 + k, col) = t1[k] - t2[k] - t3[k];
    }
  }
  return d;
}

RationalMatrix coboundary2()
{
  RationalMatrix d = RationalMatrix::Zero(kCochain3Dim, kCochain2Dim);
  for (int col = 0; col < kCochain2Dim; ++col) {
    const RationalVector phi = unit(kCochain2Dim, col);
    for (int t = 0; t < 4; ++t) {
      const std::array<int, 3> args = kTriples[t];
      std::array<Rational, 5> sum{};
      for (int r = 0; r < 3; ++r) {
        const int x = args[r], y = args[(r + 1) % 3], z = args[(r + 2) % 3];
        const auto t1 = bracket_vector(x, evaluate2(phi, y, z));
        const auto xy = bracket(x, y);
        for (int k = 0; k < 5; ++k)
          sum[k] += t1[k];
        for (int c = 1; c < 5; ++c)
          if (xy[c] != 0 && c != z) {
            const auto v = evaluate2(phi, c, z);
            for (int k = 0; k < 5; ++k)
              sum[k] -= xy[c] * v[k];
          }
      }
      for (int k = 0; k < 5; ++k)
        d(t * 5 + k, col) = sum[k];
    }
  }
  return d;
}

RowEchelon row_reduce(const RationalMatrix& m)
{
  RowEchelon r{m, {}};
  RationalMatrix& a = r.reduced;
  int row = 0;
  for (int col = 0; col < a.cols() && row < a.rows(); ++col) {
    int pivot = -1;
    for (int i = row; i < a.rows(); ++i)
      if (a(i, col) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0)
      continue;
    a.row(row).swap(a.row(pivot));
    const Rational inv = Rational(1) / a(row, col);
    for (int j = 0; j < a.cols(); ++j)
      a(row, j) *= inv;
    for (int i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col) == 0)
        continue;
      const Rational f = a(i, col);
      for (int j = 0; j < a.cols(); ++j)
        a(i, j) -= f * a(row, j);
    }
    r.pivots.push_back(col);
    ++row;
  }
  return r;
}

int rank(const RationalMatrix& m) { return static_cast<int>(row_reduce(m).pivots.size()); }

RationalMatrix nullspace(const RationalMatrix& m)
{
  const RowEchelon r = row_reduce(m);
  std::vector<int> free;
  for (int c = 0, k = 0; c < m.cols(); ++c) {
    if (k < static_cast<int>(r.pivots.size()) && r.pivots[k] == c)
      ++k;
    else
      free.push_back(c);
  }
  RationalMatrix basis = RationalMatrix::Zero(m.cols(), static_cast<int>(free.size()));
  for (int f = 0; f < static_cast<int>(free.size()); ++f) {
    basis(free[f], f) = 1;
    for (int k = 0; k < static_cast<int>(r.pivots.size()); ++k)
      basis(r.pivots[k], f) = -r.reduced(k, free[f]);
  }
  return basis;
}

RationalMatrix column_basis(const RationalMatrix& m)
{
  const RowEchelon r = row_reduce(m);
  RationalMatrix out(m.rows(), static_cast<int>(r.pivots.size()));
  for (int k = 0; k < static_cast<int>(r.pivots.size()); ++k)
    out.col(k) = m.col(r.pivots[k]);
  return out;
}

std::vector<int> homogeneity_coordinates(int homogeneity)
{
  std::vector<int> out;
  for (int i = 0; i < kCochain2Dim; ++i)
    if (cochain2_homogeneity(i) == homogeneity)
      out.push_back(i);
  return out;
}

RationalMatrix cocycle_space(std::optional<int> homogeneity)
{
  // d preserves homogeneity, so the kernel splits coordinate-wise.
  const RationalMatrix d = coboundary2();
  if (!homogeneity)
    return nullspace(d);
  const std::vector<int> coords = homogeneity_coordinates(*homogeneity);
  RationalMatrix sub(d.rows(), static_cast<int>(coords.size()));
  for (int k = 0; k < static_cast<int>(coords.size()); ++k)
    sub.col(k) = d.col(coords[k]);
  const RationalMatrix kernel = nullspace(sub);
  RationalMatrix out = RationalMatrix::Zero(kCochain2Dim, kernel.cols());
  for (int k = 0; k < static_cast<int>(coords.size()); ++k)
    out.row(coords[k]) = kernel.row(k);
  return out;
}

RationalMatrix coboundary_space(std::optional<int> homogeneity)
{
  const RationalMatrix image = column_basis(coboundary1());
  if (!homogeneity)
    return image;
  return column_basis(restrict_to(image, homogeneity_coordinates(*homogeneity)));
}

Rational LinearCondition::evaluate(const RationalVector& c) const
{
  Rational s = 0;
  for (const auto& [index, coef] : terms)
    s += coef * c[index];
  return s;
}

std::vector<LinearCondition> listed_cocycle_conditions()
{
  const int O = kV0, X = kVx, Y = kVy, T = kV2, H = kV3;
  return {
    condition("phi^x_xy - phi^2_y2 + phi^3_y3 = 0", {{1, X, X, Y}, {-1, T, Y, T}, {1, H, Y, H}}),
    condition("phi^x_x2 + phi^y_y2 + 5 phi^0_xy - phi^3_23 = 0",
              {{1, X, X, T}, {1, Y, Y, T}, {5, O, X, Y}, {-1, H, T, H}}),
    condition("phi^2_y3 + 3 phi^0_xy - phi^3_23 = 0", {{1, T, Y, H}, {3, O, X, Y}, {-1, H, T, H}}),
    condition("phi^y_y3 - phi^x_x3 = 0", {{1, Y, Y, H}, {-1, X, X, H}}),
    condition("phi^0_y2 = 0", {{1, O, Y, T}}),
    condition("phi^x_y3 = 0", {{1, X, Y, H}}),
    condition("phi^2_23 - 2 phi^x_x3 = 0", {{1, T, T, H}, {-2, X, X, H}}),
    condition("phi^0_x2 + phi^x_x3 = 0", {{1, O, X, T}, {1, X, X, H}}),
    condition("phi^0_y3 = 0", {{1, O, Y, H}}),
    condition("phi^x_23 = 0", {{1, X, T, H}}),
    condition("phi^0_x3 = 0", {{1, O, X, H}}),
    condition("phi^y_23 = 0", {{1, Y, T, H}}),
    condition("phi^0_23 = 0", {{1, O, T, H}}),
  };
}

std::vector<LinearCondition> listed_coboundary_conditions()
{
  const int O = kV0, X = kVx, Y = kVy, T = kV2, H = kV3;
  return {
    condition("phi^x_y2 = 0", {{1, X, Y, T}}),
    condition("phi^y_x2 + phi^2_x3 = 0", {{1, Y, X, T}, {1, T, X, H}}),
    condition("phi^y_y2 - phi^0_xy = 0", {{1, Y, Y, T}, {-1, O, X, Y}}),
    condition("phi^y_x3 = 0", {{1, Y, X, H}}),
  };
}

std::vector<RationalVector> cohomology_representatives()
{
  auto vec = [](std::vector<std::tuple<int, int, int>> entries) {
    RationalVector v = RationalVector::Zero(kCochain2Dim);
    for (const auto& [a, alpha, beta] : entries)
      v[cochain2_index(a, alpha, beta)] = 1;
    return v;
  };
  return {
    vec({{kVx, kVy, kV2}}),
    vec({{kV2, kVx, kV3}}),
    vec({{kVy, kVy, kV2}, {kV2, kVy, kV3}, {kV3, kV2, kV3}}),
    vec({{kVy, kVx, kV3}}),
  };
}

CohomologyReport cohomology_report()
{
  CohomologyReport r;
  const RationalMatrix d1 = coboundary1(), d2 = coboundary2();
  r.d_squared_zero = is_zero(multiply(d2, d1));
  r.jacobi = jacobi_defect() == 0;
  r.dim_c2 = kCochain2Dim;
  const RationalMatrix z = cocycle_space();
  const RationalMatrix b = coboundary_space();
  r.dim_z2 = static_cast<int>(z.cols());
  r.dim_b2 = static_cast<int>(b.cols());
  r.dim_h2 = r.dim_z2 - r.dim_b2;

  r.injective_in_4_and_5 = true;
  for (int h = -1; h <= 5; ++h) {
    HomogeneityCounts c;
    c.homogeneity = h;
    c.cochains = static_cast<int>(homogeneity_coordinates(h).size());
    c.cocycles = static_cast<int>(cocycle_space(h).cols());
    c.coboundaries = static_cast<int>(coboundary_space(h).cols());
    c.cohomology = c.cocycles - c.coboundaries;
    if (h >= 4 && c.cocycles != 0)
      r.injective_in_4_and_5 = false;
    r.by_homogeneity.push_back(c);
  }

  r.cocycle_conditions_hold = true;
  const auto zc = listed_cocycle_conditions();
  for (int k = 0; k < z.cols(); ++k)
    for (const auto& c : zc)
      if (c.evaluate(z.col(k)) != 0)
        r.cocycle_conditions_hold = false;
  // 13 independent conditions cut out exactly Z^2
  RationalMatrix zc_rows = RationalMatrix::Zero(static_cast<int>(zc.size()), kCochain2Dim);
  for (int i = 0; i < static_cast<int>(zc.size()); ++i)
    for (const auto& [index, coef] : zc[i].terms)
      zc_rows(i, index) += coef;
  if (rank(zc_rows) != kCochain2Dim - r.dim_z2)
    r.cocycle_conditions_hold = false;

  r.coboundary_conditions_hold = true;
  for (int k = 0; k < b.cols(); ++k) {
    const RationalVector flipped = to_cochain_convention<Rational>(b.col(k));
    for (const auto& c : listed_coboundary_conditions())
      if (c.evaluate(flipped) != 0)
        r.coboundary_conditions_hold = false;
  }

  r.representatives = cohomology_representatives();
  RationalMatrix reps(kCochain2Dim, static_cast<int>(r.representatives.size()));
  for (int k = 0; k < reps.cols(); ++k)
    reps.col(k) = r.representatives[k];
  r.representatives_complement =
    is_zero(multiply(d2, reps)) && rank(hstack(b, reps)) == r.dim_b2 + static_cast<int>(reps.cols()) &&
    r.dim_b2 + reps.cols() == r.dim_z2;

  r.convention = "[V_0, V_j] = -|j| V_j; (d psi)(X,Y) = [X,psi Y] - [Y,psi X] - psi([X,Y]); "
                 "(d phi)(X,Y,Z) = sum_cyclic [X,phi(Y,Z)] - phi([X,Y],Z); coboundary conditions "
                 "and curvature tables read with V_0 components negated";
  return r;
}

HomogeneityBases classification_bases(int homogeneity)
{
  HomogeneityBases out;
  const std::vector<int> coords = homogeneity_coordinates(homogeneity);
  const RationalMatrix z = cocycle_space(homogeneity);
  if (homogeneity == 3) {
    RationalVector b = RationalVector::Zero(kCochain2Dim);
    b[cochain2_index(kV0, kVx, kV2)] = -1;
    b[cochain2_index(kVx, kVx, kV3)] = 1;
    b[cochain2_index(kVy, kVy, kV3)] = 1;
    b[cochain2_index(kV2, kV2, kV3)] = 2;
    out.exact = b;
    out.closed = cohomology_representatives()[3];
    const std::vector<int> free{cochain2_index(kV0, kVy, kV2), cochain2_index(kVx, kVx, kV3),
                                cochain2_index(kVx, kVy, kV3), cochain2_index(kVy, kVy, kV3),
                                cochain2_index(kV2, kV2, kV3)};
    out.nonclosed = RationalMatrix::Zero(kCochain2Dim, static_cast<int>(free.size()));
    for (int k = 0; k < static_cast<int>(free.size()); ++k)
      out.nonclosed(free[k], k) = 1;
    return out;
  }
  out.exact = coboundary_space(homogeneity);
  RationalMatrix closed(kCochain2Dim, 0);
  if (homogeneity == 2) {
    const auto reps = cohomology_representatives();
    closed.resize(kCochain2Dim, 3);
    for (int k = 0; k < 3; ++k)
      closed.col(k) = reps[k];
  }
  out.closed = closed;
  // Greedy coordinate complement of Z in this homogeneity.
  RationalMatrix span = z;
  std::vector<int> chosen;
  for (int c : coords) {
    const RationalMatrix trial = hstack(span, unit(kCochain2Dim, c));
    if (rank(trial) > rank(span)) {
      span = trial;
      chosen.push_back(c);
    }
  }
  out.nonclosed = RationalMatrix::Zero(kCochain2Dim, static_cast<int>(chosen.size()));
  for (int k = 0; k < static_cast<int>(chosen.size()); ++k)
    out.nonclosed(chosen[k], k) = 1;
  return out;
}

CochainSplit classify_cochain(const DenseVector<double>& c, int homogeneity)
{
  if (c.size() != kCochain2Dim)
    throw StructuralError("cochain must have 30 coordinates");
  const HomogeneityBases bases = classification_bases(homogeneity);
  const std::vector<int> coords = homogeneity_coordinates(homogeneity);
  const int ne = static_cast<int>(bases.exact.cols()), nc = static_cast<int>(bases.closed.cols()),
            nn = static_cast<int>(bases.nonclosed.cols());
  // Square system on the coordinates of this homogeneity.
  Eigen::MatrixXd m(coords.size(), ne + nc + nn);
  Eigen::VectorXd rhs(coords.size());
  for (int i = 0; i < static_cast<int>(coords.size()); ++i) {
    rhs[i] = c[coords[i]];
    for (int k = 0; k < ne; ++k)
      m(i, k) = static_cast<double>(bases.exact(coords[i], k));
    for (int k = 0; k < nc; ++k)
      m(i, ne + k) = static_cast<double>(bases.closed(coords[i], k));
    for (int k = 0; k < nn; ++k)
      m(i, ne + nc + k) = static_cast<double>(bases.nonclosed(coords[i], k));
  }
  if (m.rows() != m.cols())
    throw StructuralError("classification bases do not form a basis");
  const Eigen::VectorXd x = m.fullPivLu().solve(rhs);

  auto to_double = [](const RationalMatrix& r) {
    Eigen::MatrixXd d(r.rows(), r.cols());
    for (int i = 0; i < r.rows(); ++i)
      for (int j = 0; j < r.cols(); ++j)
        d(i, j) = static_cast<double>(r(i, j));
    return d;
  };
  CochainSplit s;
  s.exact = to_double(bases.exact) * x.head(ne);
  s.closed = to_double(bases.closed) * x.segment(ne, nc);
  s.nonclosed = to_double(bases.nonclosed) * x.tail(nn);
  s.exact_coefficients.assign(x.data(), x.data() + ne);
  s.closed_coefficients.assign(x.data() + ne, x.data() + ne + nc);
  return s;
}

std::string format_rational(const Rational& r)
{
  std::ostringstream os;
  os << r;
  return os.str();
}

} // namespace engelcr
