// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "engelcr/cartan.hpp"
#include "engelcr/cohomology.hpp"
#include "engelcr/models.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace engelcr;

namespace {

struct Outcome
{
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what)
  {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double rel(double a, double b)
{
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

std::vector<Point> random_points(int count, unsigned seed, double radius)
{
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-radius, radius);
  std::vector<Point> pts;
  for (int i = 0; i < count; ++i)
    pts.push_back({u(rng), u(rng), u(rng), u(rng)});
  return pts;
}

std::array<double, 4> at_origin(const NormalFormCoefficients& c)
{
  const EssentialCurvatures r = essential_curvatures(normal_form_model(c), {0, 0, 0, 0});
  return {r.rx_y2.at(1), r.ry_y2.at(1), r.r2_x3.at(1), r.ry_x3.at(1)};
}

NormalFormCoefficients perturbed_coefficients()
{
  NormalFormCoefficients c;
  c.a1 = 0.3, c.a2 = -0.2;
  c.b1 = 0.4, c.b2 = 0.25, c.b3 = -0.1, c.b4 = 0.2, c.b5 = 0.15, c.b6 = -0.3, c.b7 = 0.1,
  c.b8 = 0.05;
  return c;
}

std::vector<EngelStructure> property_structures()
{
  NormalFormCoefficients c;
  c.a1 = 0.2, c.b1 = 0.3, c.b3 = -0.2, c.b8 = 0.1;
  const Polynomial q = Polynomial::variable(3);
  return {cubic(), sheared_cubic(), normal_form_model(c),
          ode_normal_coordinates(0.4 * q * q + Polynomial::variable(0) * Polynomial::variable(2))};
}

// 1 ---------------------------------------------------------------------------------

void flat_model(Outcome& o)
{
  const auto start = Clock::now();
  const FlatnessResult r = flatness_test(cubic(), random_points(20, 1, 1.0), 5, 1e-9);
  const double elapsed = seconds_since(start);
  o.detail << "cubic, 20 points: max |R| = " << r.max_residual << ", " << elapsed << " s";
  o.require(r.points.size() == 20, "20 points evaluated");
  o.require(r.max_residual < 1e-9, "max |R| < 1e-9");
  o.require(elapsed < 5.0, "runtime < 5 s");
}

// 2 ---------------------------------------------------------------------------------

void cohomology(Outcome& o)
{
  const auto start = Clock::now();
  const CohomologyReport r = cohomology_report();
  const double elapsed = seconds_since(start);
  std::map<int, HomogeneityCounts> by_h;
  std::map<int, int> histogram;
  for (const HomogeneityCounts& h : r.by_homogeneity) {
    by_h[h.homogeneity] = h;
    if (h.cohomology > 0)
      histogram[h.homogeneity] = h.cohomology;
  }
  o.detail << "C2 = " << r.dim_c2 << ", Z2 = " << r.dim_z2 << ", H2 = " << r.dim_h2 << ", "
           << elapsed << " s";
  o.require(r.dim_c2 == 30 && r.dim_z2 == 17 && r.dim_h2 == 4, "dimensions 30/17/4");
  o.require(histogram == std::map<int, int>{{2, 3}, {3, 1}}, "histogram {2:3, 3:1}");
  o.require(by_h[1].cocycles == 5 && by_h[1].coboundaries == 5, "homogeneity 1: Z = B = 5");
  o.require(by_h[2].cocycles == 6, "homogeneity 2: Z = 6");
  o.require(by_h[4].cocycles == 0 && by_h[5].cocycles == 0 && by_h[4].cochains > 0 &&
              by_h[5].cochains > 0,
            "d injective in homogeneities 4, 5");
  o.require(r.d_squared_zero, "d^2 = 0");
  o.require(elapsed < 1.0, "runtime < 1 s");
}

// 3 ---------------------------------------------------------------------------------

void normal_form(Outcome& o)
{
  const double s = 0.1;
  // expected values with gauge factor 1
  const std::vector<std::pair<double NormalFormCoefficients::*, std::array<double, 4>>> cases{
    {&NormalFormCoefficients::b1, {2 * s, 0, 2 * s, 0}},
    {&NormalFormCoefficients::b2, {-s, 0, -5 * s, 0}},
    {&NormalFormCoefficients::b3, {0, -3 * s, 0, 0}},
    {&NormalFormCoefficients::a1, {0, 0, 0, 4 * s}},
    {&NormalFormCoefficients::a2, {0, 0, 0, 0}},
    {&NormalFormCoefficients::b4, {0, 0, 0, 5 * s}},
    {&NormalFormCoefficients::b5, {0, 0, 0, 0}},
    {&NormalFormCoefficients::b6, {0, 0, 0, -2 * s}},
    {&NormalFormCoefficients::b7, {0, 0, 0, 0}},
    {&NormalFormCoefficients::b8, {0, 0, 0, -6 * s}}};
  bool pattern = true;
  double value_error = 0.0;
  for (const auto& [member, expected] : cases) {
    NormalFormCoefficients c;
    c.*member = s;
    const auto v = at_origin(c);
    for (int i = 0; i < 4; ++i) {
      pattern = pattern && ((expected[i] == 0.0) == (std::abs(v[i]) < kVanishingThreshold));
      value_error = std::max(value_error, std::abs(v[i] - expected[i]));
    }
  }
  o.require(pattern, "vanishing pattern");
  o.require(value_error < 1e-9, "gauge-factor-1 values");

  double ratio_error = 0.0;
  for (double b1 : {0.01, 0.03, -0.05, 0.2})
    for (double b2 : {0.03, -0.02, 0.1}) {
      NormalFormCoefficients c;
      c.b1 = b1, c.b2 = b2;
      const auto v = at_origin(c);
      ratio_error = std::max(ratio_error, std::abs(v[2] / v[0] - (2 * b1 - 5 * b2) / (2 * b1 - b2)));
    }
  o.require(ratio_error < 1e-3, "ratio R2_x3 / Rx_y2");

  NormalFormCoefficients full, half;
  full.b3 = 0.08, half.b3 = 0.04;
  const double halving = std::abs(at_origin(half)[1] / at_origin(full)[1] - 0.5);
  o.require(halving < 1e-4, "B3 halving");

  double locus = 0.0;
  for (const auto& [a1, b4, b6] :
       {std::array{1.0, -2.0, -3.0}, std::array{0.5, 0.2, 1.5}, std::array{-0.3, 0.4, -0.1}}) {
    NormalFormCoefficients c;
    c.a1 = a1, c.b4 = b4, c.b6 = b6;
    c.b8 = (4 * a1 + 5 * b4 - 2 * b6) / 6;
    c.b1 = 0.1, c.b3 = 0.2;
    locus = std::max(locus, std::abs(at_origin(c)[3]));
  }
  o.require(locus < 1e-6, "umbilic locus");
  o.detail << "value error " << value_error << ", ratio error " << ratio_error << ", halving "
           << halving << ", umbilic " << locus;
}

// 4 ---------------------------------------------------------------------------------

void two_routes(Outcome& o)
{
  const LocalAnalysis la =
    LocalAnalysis::at(normal_form_model(perturbed_coefficients()), {0.1, -0.05, 0.02, 0.03}, 6);
  const CurvatureTable direct = bracket_curvature_table(la, 4);
  const CurvatureTable listed = curvature_table(la, 4);
  const EssentialCurvatures r = essential_curvatures(la);
  const double ry = r.ry_y2.at(1);
  const double h2 = std::max(std::abs(direct.at({kV2, kVy, kV3}).at(1) - ry),
                             std::abs(direct.at({kV3, kV2, kV3}).at(1) - ry));
  const CurvatureKey ky{kVy, kVy, kV3}, k0{kV0, kVy, kV3};
  const double h3 = std::max(rel(direct.at(ky).at(1), listed.at(ky).at(1)),
                             rel(direct.at(ky).at(1), la.vhat(kVx, r.ry_y2).at(1)));
  const double h4 = rel(direct.at(k0).at(1), listed.at(k0).at(1));
  o.detail << "hom 2 " << h2 << ", k^y_y3 rel " << h3 << ", k^0_y3 rel " << h4;
  o.require(std::abs(ry) > 1e-3 && std::abs(listed.at(k0).at(1)) > 1e-6, "non-trivial model");
  o.require(h2 < 1e-8, "homogeneity-2 identities");
  o.require(h3 < 1e-5, "homogeneity-3 identity");
  o.require(h4 < 1e-5, "homogeneity-4 identity");
}

// 5 ---------------------------------------------------------------------------------

void robustness(Outcome& o)
{
  const std::vector<Point> pts = random_points(8, 5, 0.8);
  const FlatnessResult sheared = flatness_test(sheared_cubic(), pts, 5, 1e-6);
  const EngelStructure pre = rescaled(
    cubic(), ScalarField::from_expression([](const Coords& c) { return exp(c[1]); }));
  double scaled = 0.0;
  bool scaled_flat = true;
  for (const Point& p : pts) {
    const FlatnessResult f = flatness_test(normalize_scale(pre, p, 8), {p}, 5, 1e-6);
    scaled = std::max(scaled, f.max_residual);
    scaled_flat = scaled_flat && f.flat;
  }
  o.detail << "chart " << sheared.max_residual << ", rescaled " << scaled;
  o.require(sheared.flat && sheared.max_residual < 1e-6, "polynomial chart change");
  o.require(scaled_flat && scaled < 1e-6, "Y -> e^y Y then normalize_scale");
}

// 6 ---------------------------------------------------------------------------------

double max_abs(const VectorJet& v)
{
  double m = 0.0;
  for (const Jetd& c : v)
    m = std::max(m, c.max_abs());
  return m;
}

Jetd random_jet(std::mt19937& rng, int order, const Point& base)
{
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Jetd j(order, base);
  for (int r = 0; r < j.size(); ++r)
    j[r] = u(rng);
  return j;
}

void properties(Outcome& o)
{
  double jacobi = 0.0, duality = 0.0, tensorial = 0.0;
  const ScalarField g = ScalarField::from_expression(
    [](const Coords& c) { return exp(sin(c[0]) + c[1] * c[2]) * (1.0 + c[3] * c[3]); });
  const ScalarField f1 = ScalarField::from_expression([](const Coords& c) { return cos(c[1]) + 2.0; });
  const ScalarField f2 = ScalarField::from_expression([](const Coords& c) { return c[0] * c[3]; });
  for (const EngelStructure& e : property_structures())
    for (const Point& p : random_points(4, 6, 0.5)) {
      const EngelJets pair = normalized_jets(e, p, 6);
      const FrameJets fr = FrameJets::from_pair(pair.x, pair.y);
      const auto& t = fr.t;
      for (int a : {kX, kY}) {
        const VectorJet j = bracket(t[a], bracket(t[k2], t[k3])) +
                            bracket(t[k2], bracket(t[k3], t[a])) +
                            bracket(t[k3], bracket(t[a], t[k2]));
        jacobi = std::max(jacobi, values(j).cwiseAbs().maxCoeff());
      }
      const Coframe co = dual_coframe(fr);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          duality = std::max(duality, std::abs(co.pair(a, t[b]).value() - (a == b ? 1.0 : 0.0)));

      // the D'/D class of [gA, B] at p is g(p) times that of [A, B]
      const EngelJets raw = e.jets(p, 5);
      const FrameJets rf = FrameJets::from_pair(raw.x, raw.y);
      const Coframe rc = dual_coframe(rf);
      const VectorJet a = f1(p, 5) * raw.x + f2(p, 5) * raw.y;
      const VectorJet b = f2(p, 5) * raw.x - f1(p, 5) * raw.y;
      const double plain = rc.pair(k2, bracket(a, b)).value();
      const double scaled = rc.pair(k2, bracket(g(p, 5) * a, b)).value();
      tensorial = std::max(tensorial, std::abs(scaled - g(p, 0).value() * plain));
    }

  double ring = 0.0;
  std::mt19937 rng(8);
  const Point base{0.3, -0.2, 0.5, 0.1};
  for (int trial = 0; trial < 5; ++trial) {
    const Jetd a = random_jet(rng, 6, base), b = random_jet(rng, 6, base),
               c = random_jet(rng, 6, base);
    ring = std::max(ring, ((a * b) * c - a * (b * c)).max_abs());
    ring = std::max(ring, (a * (b + c) - (a * b + a * c)).max_abs());
    ring = std::max(ring, (a * b - b * a).max_abs());
    for (int axis = 0; axis < 4; ++axis)
      ring = std::max(ring, (partial(a * b, axis) - (partial(a, axis) * b.truncated(5) +
                                                     a.truncated(5) * partial(b, axis)))
                              .max_abs());
  }
  o.detail << "Jacobi " << jacobi << ", duality " << duality << ", ring/Leibniz " << ring
           << ", quotient bracket " << tensorial;
  o.require(jacobi < 1e-9, "Jacobi < 1e-9");
  o.require(duality < 1e-10, "duality < 1e-10");
  o.require(ring < 1e-12, "ring/Leibniz < 1e-12");
  o.require(tensorial < 1e-9, "quotient bracket < 1e-9");
}

// 7 ---------------------------------------------------------------------------------

void ode_flow(Outcome& o)
{
  const VectorField x = ode_normal_coordinates(Polynomial::variable(3)).x();
  double worst = 0.0;
  for (const auto& [c1, c2, c3] :
       {std::array{0.3, -0.7, 1.2}, std::array{-1.0, 0.5, 0.0}, std::array{2.0, 0.1, -0.4}}) {
    const auto exact = [&](double s) {
      return Point{s, c1 + c2 * s + c3 * std::exp(s), c2 + c3 * std::exp(s), c3 * std::exp(s)};
    };
    for (double s : {0.25, 0.5, 0.75, 1.0}) {
      const Point end = integrate_flow(x, exact(0.0), s, 200);
      const Point ref = exact(s);
      for (int i = 0; i < 4; ++i)
        worst = std::max(worst, std::abs(end[i] - ref[i]));
    }
  }
  o.detail << "B = q, max deviation " << worst;
  o.require(worst < 1e-6, "integral curves within 1e-6");
}

} // namespace

int main()
{
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
    {"flat-model vanishing", flat_model},
    {"cohomology dimensions", cohomology},
    {"normal-form coefficient pattern", normal_form},
    {"two-route curvature consistency", two_routes},
    {"gauge and chart robustness", robustness},
    {"property suites", properties},
    {"ODE correspondence", ode_flow}};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    o.detail.precision(3);
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.str().c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
