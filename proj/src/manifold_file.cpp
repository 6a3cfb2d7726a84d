#include "engelcr/manifold_file.hpp"

#include "engelcr/models.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace engelcr {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what)
{
  throw ParseError(where + ": " + what);
}

std::string line_column(const std::string& text, std::size_t byte)
{
  int line = 1, column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return std::to_string(line) + ":" + std::to_string(column);
}

double number(const json& j, const std::string& where)
{
  if (!j.is_number())
    fail(where, "expected a number, got " + j.dump());
  const double v = j.get<double>();
  if (!std::isfinite(v))
    fail(where, "value is not finite");
  return v;
}

Point parse_point(const json& j, const std::string& where)
{
  if (!j.is_array() || j.size() != 4)
    fail(where, "a point is a list of four numbers");
  Point p{};
  for (int i = 0; i < 4; ++i)
    p[i] = number(j[i], where + "[" + std::to_string(i) + "]");
  return p;
}

const std::map<std::string, double NormalFormCoefficients::*> kCoefficientNames{
  {"A1", &NormalFormCoefficients::a1}, {"A2", &NormalFormCoefficients::a2},
  {"B1", &NormalFormCoefficients::b1}, {"B2", &NormalFormCoefficients::b2},
  {"B3", &NormalFormCoefficients::b3}, {"B4", &NormalFormCoefficients::b4},
  {"B5", &NormalFormCoefficients::b5}, {"B6", &NormalFormCoefficients::b6},
  {"B7", &NormalFormCoefficients::b7}, {"B8", &NormalFormCoefficients::b8}};

NormalFormCoefficients parse_coefficients(const json& j)
{
  NormalFormCoefficients c;
  if (j.is_null())
    return c;
  if (!j.is_object())
    fail("coefficients", "expected an object such as {\"B3\": 0.05}");
  for (const auto& [key, value] : j.items()) {
    const auto it = kCoefficientNames.find(key);
    if (it == kCoefficientNames.end())
      fail("coefficients", "unknown coefficient '" + key + "' (A1, A2, B1..B8)");
    c.*(it->second) = number(value, "coefficients." + key);
  }
  return c;
}

} // namespace

Polynomial parse_polynomial(const json& j, const std::string& where)
{
  if (!j.is_array())
    fail(where, "a polynomial is a list of [multi-index, coefficient] pairs");
  Polynomial p;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string at = where + "[" + std::to_string(k) + "]";
    const json& term = j[k];
    if (!term.is_array() || term.size() != 2 || !term[0].is_array())
      fail(at, "expected [multi-index, coefficient], got " + term.dump());
    const json& idx = term[0];
    if (idx.size() != 2 && idx.size() != 4)
      fail(at, "multi-index needs 2 or 4 entries");
    MultiIndex m{0, 0, 0, 0};
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (!idx[i].is_number_integer() || idx[i].get<int>() < 0)
        fail(at, "multi-index entries are non-negative integers");
      m[i] = idx[i].get<int>();
    }
    if (total_degree(m) > JetLayout::kMaxOrder)
      fail(at, "degree " + std::to_string(total_degree(m)) + " exceeds the supported " +
                 std::to_string(JetLayout::kMaxOrder));
    p.add_term(m, number(term[1], at));
  }
  return p;
}

EngelStructure ManifoldSpec::structure() const
{
  EngelStructure e = [&] {
    if (kind == "cubic")
      return cubic();
    if (kind == "graph") {
      GraphSpec g{parse_polynomial(source.value("F1", json::array()), "F1"),
                  parse_polynomial(source.value("F2", json::array()), "F2")};
      return graph_to_engel(g);
    }
    if (kind == "normal_form")
      return normal_form_model(parse_coefficients(source.value("coefficients", json())));
    return ode_normal_coordinates(parse_polynomial(source.value("B", json::array()), "B"));
  }();
  if (!description.empty())
    e.description = description;
  return e;
}

ManifoldSpec parse_manifold(const std::string& text, const std::string& origin)
{
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ":" + line_column(text, e.byte) + ": " + e.what());
  }
  if (!doc.is_object())
    fail(origin, "top level must be an object");
  if (!doc.contains("format") || doc["format"] != 1)
    fail(origin, "missing or unsupported \"format\" (expected 1)");

  ManifoldSpec s;
  s.source = doc;
  if (!doc.contains("kind") || !doc["kind"].is_string())
    fail(origin, "missing \"kind\"");
  s.kind = doc["kind"].get<std::string>();
  if (s.kind != "cubic" && s.kind != "graph" && s.kind != "normal_form" && s.kind != "ode")
    fail("kind", "unknown kind '" + s.kind + "' (cubic, graph, normal_form, ode)");
  if (doc.contains("description")) {
    if (!doc["description"].is_string())
      fail("description", "expected a string");
    s.description = doc["description"].get<std::string>();
  }

  if (doc.contains("points")) {
    const json& pts = doc["points"];
    if (!pts.is_array() || pts.empty())
      fail("points", "expected a non-empty list of points");
    for (std::size_t i = 0; i < pts.size(); ++i)
      s.points.push_back(parse_point(pts[i], "points[" + std::to_string(i) + "]"));
  } else {
    s.points.push_back({0, 0, 0, 0});
  }
  if (doc.contains("order")) {
    if (!doc["order"].is_number_integer())
      fail("order", "expected an integer");
    s.order = doc["order"].get<int>();
  }
  if (doc.contains("t")) {
    const json& t = doc["t"];
    if (!t.is_array() || t.empty())
      fail("t", "expected a non-empty list of numbers");
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double v = number(t[i], "t[" + std::to_string(i) + "]");
      if (v == 0.0)
        fail("t[" + std::to_string(i) + "]", "fiber value must be non-zero");
      s.t.push_back(v);
    }
  } else {
    s.t.push_back(1.0);
  }

  // validate payloads eagerly so errors surface at load time
  if (s.kind == "graph") {
    parse_polynomial(doc.value("F1", json::array()), "F1");
    parse_polynomial(doc.value("F2", json::array()), "F2");
  } else if (s.kind == "normal_form") {
    parse_coefficients(doc.value("coefficients", json()));
  } else if (s.kind == "ode") {
    if (!doc.contains("B"))
      fail("B", "ode files need the right-hand side \"B\"");
    parse_polynomial(doc["B"], "B");
  }
  return s;
}

ManifoldSpec load_manifold(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw ParseError(path + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_manifold(buf.str(), path);
}

} // namespace engelcr
