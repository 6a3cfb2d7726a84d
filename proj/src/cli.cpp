#include "engelcr/cli.hpp"

#include "engelcr/cartan.hpp"
#include "engelcr/cohomology.hpp"

#include <CLI11.hpp>

#include <future>
#include <iostream>
#include <sstream>

namespace engelcr {

namespace {

using nlohmann::json;

constexpr double kTwoRouteTolerance = 1e-5;
constexpr double kIdentityTolerance = 1e-8;
constexpr double kJacobiTolerance = 1e-9;
constexpr double kDualityTolerance = 1e-10;
constexpr double kLowHomogeneityTolerance = 1e-9;

std::vector<Point> points_of(const ManifoldSpec& spec, const CliOptions& opt)
{
  return opt.points.empty() ? spec.points : opt.points;
}

std::vector<double> fibers_of(const ManifoldSpec& spec, const CliOptions& opt)
{
  return opt.t.empty() ? spec.t : opt.t;
}

int order_of(const ManifoldSpec& spec, const CliOptions& opt, int fallback)
{
  if (opt.order)
    return *opt.order;
  if (spec.order)
    return *spec.order;
  return fallback;
}

json gauge(const ManifoldSpec& spec, int order)
{
  std::string pair;
  if (spec.kind == "cubic")
    pair = "left-invariant (V_x, V_y)";
  else if (spec.kind == "ode")
    pair = "X = d/dx + p d/dy + q d/dp + B d/dq, Y = d/dq";
  else
    pair = "Y = -W/2 with W = alpha U + beta V spanning D0, dominant coefficient 1; X = JY";
  return {{"pair", pair},
          {"normalization",
           "Y(log tau) = -phi^2_y2 / 3, tau = 1 on the chart hyperplane through the point "
           "spanned by X, T_2, T_3"},
          {"fiber", "values at the listed t; weights give the t-dependence exactly"},
          {"u_labels", "weight-2 direction du1, weight-3 direction du2"},
          {"jet_order", order}};
}

json header(const std::string& command, const ManifoldSpec& spec)
{
  return {{"command", command},
          {"manifold", {{"kind", spec.kind}, {"description", spec.description}}}};
}

template <typename F>
auto sweep(const std::vector<Point>& points, F f)
{
  using R = decltype(f(points[0]));
  std::vector<std::future<R>> jobs;
  for (const Point& p : points)
    jobs.push_back(std::async(std::launch::async, f, p));
  std::vector<R> out;
  for (auto& j : jobs)
    out.push_back(j.get());
  return out;
}

double relative(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

json check(const std::string& name, double residual, double threshold)
{
  return {{"name", name}, {"residual", residual}, {"threshold", threshold},
          {"pass", residual < threshold}};
}

json point_invariants(const EngelStructure& e, const Point& p, int order,
                      const std::vector<double>& fibers, std::optional<int> table_h,
                      double threshold)
{
  const LocalAnalysis la = LocalAnalysis::at(e, p, order);
  const EngelDiagnostics d = diagnose(e, p);
  const EssentialCurvatures r = essential_curvatures(la);
  json inv = json::array();
  double max_abs = 0.0;
  const auto all = r.all();
  for (int i = 0; i < 4; ++i) {
    json values = json::array();
    for (double t : fibers)
      values.push_back({{"t", t}, {"value", all[i].at(t)}});
    inv.push_back({{"name", kEssentialNames[i]}, {"weight", all[i].weight}, {"values", values}});
    max_abs = std::max(max_abs, std::abs(all[i].at(1.0)));
  }
  json out{{"point", p},
           {"diagnostics",
            {{"engel_determinant", d.engel_determinant},
             {"d0_residual", d.d0_residual},
             {"normalization_residual", std::abs(la.phi()(k2, kY, k2).value())}}},
           {"invariants", inv},
           {"max_abs_at_t1", max_abs},
           {"umbilic", max_abs < threshold}};
  if (table_h) {
    const CurvatureTable listed = curvature_table(la, *table_h);
    const CurvatureTable direct = bracket_curvature_table(la, *table_h);
    json table = json::array();
    for (const auto& [k, v] : listed)
      table.push_back({{"name", curvature_name(k)},
                       {"homogeneity", homogeneity(k)},
                       {"weight", v.weight},
                       {"value_at_t1", v.at(1.0)},
                       {"bracket_value_at_t1", direct.at(k).at(1.0)},
                       {"residual", relative(direct.at(k).at(1.0), v.at(1.0))}});
    out["table"] = table;
  }
  return out;
}

} // namespace

std::vector<Point> parse_points(const std::string& text)
{
  std::vector<Point> out;
  std::stringstream all(text);
  std::string item;
  while (std::getline(all, item, ';')) {
    std::stringstream ss(item);
    std::string num;
    std::vector<double> v;
    while (std::getline(ss, num, ','))
      try {
        std::size_t used = 0;
        v.push_back(std::stod(num, &used));
        if (num.find_first_not_of(" \t", used) != std::string::npos)
          throw std::invalid_argument(num);
      } catch (const std::exception&) {
        throw ParseError("--points: cannot read '" + num + "' as a number");
      }
    if (v.size() != 4)
      throw ParseError("--points: '" + item + "' does not have four coordinates");
    out.push_back({v[0], v[1], v[2], v[3]});
  }
  if (out.empty())
    throw ParseError("--points: no points given");
  return out;
}

json invariants_report(const ManifoldSpec& spec, const CliOptions& opt)
{
  const int order = order_of(spec, opt, required_order(opt.max_homogeneity.value_or(2)));
  const EngelStructure e = spec.structure();
  const std::vector<double> fibers = fibers_of(spec, opt);
  json r = header("invariants", spec);
  r["gauge"] = gauge(spec, order);
  r["thresholds"] = {{"vanishing", opt.threshold}, {"d0", kD0Threshold},
                     {"two_route_relative", kTwoRouteTolerance}};
  r["points"] = sweep(points_of(spec, opt), [&](const Point& p) {
    return point_invariants(e, p, order, fibers, opt.max_homogeneity, opt.threshold);
  });
  double worst = 0.0;
  for (const json& p : r["points"])
    worst = std::max(worst, p["max_abs_at_t1"].get<double>());
  r["verdict"] = {{"flat", worst < opt.threshold}, {"max_residual", worst},
                  {"threshold", opt.threshold}};
  return r;
}

json verdict_report(const ManifoldSpec& spec, const CliOptions& opt, bool umbilic)
{
  const int order = order_of(spec, opt, 5);
  const EngelStructure e = spec.structure();
  const std::vector<Point> pts = points_of(spec, opt);
  const FlatnessResult f = flatness_test(e, pts, order, opt.threshold);
  json r = header(umbilic ? "umbilic" : "flatness", spec);
  r["gauge"] = gauge(spec, order);
  r["thresholds"] = {{"vanishing", opt.threshold}};
  json points = json::array();
  bool all_umbilic = true;
  for (const PointInvariants& p : f.points) {
    json values = json::object();
    for (int i = 0; i < 4; ++i)
      values[kEssentialNames[i]] = p.values[i];
    const bool u = p.max_abs < opt.threshold;
    all_umbilic = all_umbilic && u;
    points.push_back({{"point", p.point}, {"invariants_at_t1", values}, {"residual", p.max_abs},
                      {"umbilic", u}});
  }
  r["points"] = points;
  r["max_residual"] = f.max_residual;
  if (umbilic)
    r["umbilic"] = all_umbilic;
  else
    r["flat"] = f.flat;
  r["pass"] = umbilic ? all_umbilic : f.flat;
  return r;
}

json cohomology_json()
{
  const CohomologyReport c = cohomology_report();
  json r{{"command", "cohomology"},
         {"dimensions", {{"C2", c.dim_c2}, {"Z2", c.dim_z2}, {"B2", c.dim_b2}, {"H2", c.dim_h2}}},
         {"convention", c.convention}};
  json table = json::array();
  json hist = json::object();
  for (const HomogeneityCounts& h : c.by_homogeneity) {
    table.push_back({{"homogeneity", h.homogeneity}, {"C2", h.cochains}, {"Z2", h.cocycles},
                     {"B2", h.coboundaries}, {"H2", h.cohomology}});
    if (h.cohomology > 0)
      hist[std::to_string(h.homogeneity)] = h.cohomology;
  }
  r["by_homogeneity"] = table;
  r["h2_histogram"] = hist;
  json reps = json::array();
  for (const RationalVector& v : c.representatives) {
    json terms = json::object();
    for (int i = 0; i < v.size(); ++i)
      if (v[i] != 0)
        terms[cochain2_name(i)] = format_rational(v[i]);
    reps.push_back(terms);
  }
  r["representatives"] = reps;
  r["checks"] = {{"d_squared_zero", c.d_squared_zero},
                 {"jacobi", c.jacobi},
                 {"cocycle_conditions", c.cocycle_conditions_hold},
                 {"coboundary_conditions", c.coboundary_conditions_hold},
                 {"representatives_complement", c.representatives_complement},
                 {"injective_in_4_and_5", c.injective_in_4_and_5}};
  return r;
}

json check_report(const ManifoldSpec& spec, const CliOptions& opt)
{
  const int max_h = opt.max_homogeneity.value_or(4);
  const int order = order_of(spec, opt, required_order(max_h));
  const EngelStructure e = spec.structure();
  json r = header("check", spec);
  r["gauge"] = gauge(spec, order);
  r["max_homogeneity"] = max_h;
  const auto per_point = [&](const Point& p) {
    json checks = json::array();
    const LocalAnalysis la = LocalAnalysis::at(e, p, order);
    const EngelDiagnostics d = diagnose(e, p);
    checks.push_back(check("d0_alignment", d.d0_residual, kD0Threshold));
    checks.push_back(
      check("normalization", std::abs(la.phi()(k2, kY, k2).value()), kIdentityTolerance));

    const auto& t = la.frame().t;
    for (int a : {kX, kY}) {
      const VectorJet j = bracket(t[a], bracket(t[k2], t[k3])) +
                          bracket(t[k2], bracket(t[k3], t[a])) + bracket(t[k3], bracket(t[a], t[k2]));
      checks.push_back(check(a == kX ? "jacobi_x" : "jacobi_y", values(j).cwiseAbs().maxCoeff(),
                             kJacobiTolerance));
    }
    double dual = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        dual = std::max(dual, std::abs(la.coframe().pair(a, t[b]).value() - (a == b ? 1.0 : 0.0)));
    checks.push_back(check("coframe_duality", dual, kDualityTolerance));

    const CurvatureTable listed = curvature_table(la, max_h);
    const CurvatureTable direct = bracket_curvature_table(la, max_h);
    double low = 0.0;
    std::map<int, double> route;
    for (const auto& [k, v] : direct) {
      const int h = homogeneity(k);
      if (h <= 1)
        low = std::max(low, std::abs(v.at(1.0)));
      else
        route[h] = std::max(route[h], relative(v.at(1.0), listed.at(k).at(1.0)));
    }
    checks.push_back(check("low_homogeneity_vanish", low, kLowHomogeneityTolerance));
    const double ry = essential_curvatures(la).ry_y2.at(1.0);
    checks.push_back(check("k^2_y3 = R^y_y2",
                           std::abs(direct.at({kV2, kVy, kV3}).at(1.0) - ry), kIdentityTolerance));
    checks.push_back(check("k^3_23 = R^y_y2",
                           std::abs(direct.at({kV3, kV2, kV3}).at(1.0) - ry), kIdentityTolerance));
    for (const auto& [h, res] : route)
      checks.push_back(check("two_route_homogeneity_" + std::to_string(h), res, kTwoRouteTolerance));
    if (max_h >= 3)
      checks.push_back(check("a30_exact_part",
                             std::abs(a30_from_exact_part(la) - la.alpha0(kV3).value()),
                             kIdentityTolerance));
    if (order >= 6) {
      const ConnectionForm cf = connection_form(la);
      const ConnectionCoefficients cc = connection_coefficients(la, 1.0);
      double res = 0.0;
      for (int k = 1; k < 5; ++k)
        res = std::max(res, std::abs(cc.b(kV0, k) - cf.frame_components[k - 1].value()));
      checks.push_back(check("varpi_from_inverse", res, kDualityTolerance));
    }
    bool pass = true;
    for (const json& c : checks)
      pass = pass && c["pass"].get<bool>();
    return json{{"point", p}, {"checks", checks}, {"pass", pass}};
  };
  r["points"] = sweep(points_of(spec, opt), per_point);
  bool pass = true;
  for (const json& p : r["points"])
    pass = pass && p["pass"].get<bool>();
  r["pass"] = pass;
  return r;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Cartan connection invariants of Engel CR manifolds", "engelcr"};
  app.require_subcommand(1);

  std::string file, points;
  CliOptions opt;
  const auto add_common = [&](CLI::App* sub, bool with_table) {
    sub->add_option("file", file, "manifold description (JSON, format 1)")->required();
    sub->add_option("--points", points, "points as \"x,y,u1,u2;x,y,u1,u2\"");
    sub->add_option("--order", opt.order, "jet order of the normalized pair");
    sub->add_option("--threshold", opt.threshold, "vanishing threshold")->capture_default_str();
    if (with_table)
      sub->add_option("--max-homogeneity", opt.max_homogeneity, "curvature homogeneity bound")
        ->check(CLI::Range(-1, 5));
  };
  CLI::App* inv = app.add_subcommand("invariants", "essential invariants per point");
  add_common(inv, true);
  inv->add_option("--t", opt.t, "fiber values");
  CLI::App* flat = app.add_subcommand("flatness", "flatness verdict over the points");
  add_common(flat, false);
  CLI::App* umb = app.add_subcommand("umbilic", "umbilicity verdict at the points");
  add_common(umb, false);
  CLI::App* coh = app.add_subcommand("cohomology", "dimensions and representatives of H^2");
  CLI::App* chk = app.add_subcommand("check", "self-consistency suite");
  add_common(chk, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    json report;
    bool pass = true;
    if (coh->parsed()) {
      report = cohomology_json();
    } else {
      const ManifoldSpec spec = load_manifold(file);
      if (!points.empty())
        opt.points = parse_points(points);
      if (inv->parsed()) {
        report = invariants_report(spec, opt);
      } else if (chk->parsed()) {
        report = check_report(spec, opt);
        pass = report["pass"].get<bool>();
      } else {
        report = verdict_report(spec, opt, umb->parsed());
        pass = report["pass"].get<bool>();
      }
    }
    out << report.dump(2) << "\n";
    return pass ? 0 : 1;
  } catch (const Error& e) {
    out << json{{"error", {{"kind", e.kind()}, {"message", e.what()}}}}.dump(2) << "\n";
    err << e.kind() << ": " << e.what() << "\n";
    return 2;
  }
}

} // namespace engelcr
