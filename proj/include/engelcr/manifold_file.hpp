#pragma once

// Manifold description files (JSON, "format": 1).
//
//   {
//     "format": 1,
//     "kind": "cubic" | "graph" | "normal_form" | "ode",
//     "description": "...",                       optional
//     "F1": [[[i, j], c], ...], "F2": [...]       graph: polynomials in (x, y)
//     "coefficients": {"A1": .., "B3": .., ...}    normal_form
//     "B": [[[i, j, k, l], c], ...]                ode: y''' = B(x, y, p, q)
//     "points": [[x, y, u1, u2], ...],             optional, default [[0, 0, 0, 0]]
//     "order": 6,                                  optional jet order
//     "t": [1.0, 2.0]                              optional fiber values
//   }
//
// Multi-indices have two entries (x, y) or four (x, y, u1, u2).

#include "engelcr/engel.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace engelcr {

struct ManifoldSpec
{
  std::string kind;
  std::string description;
  std::vector<Point> points;
  std::optional<int> order;
  std::vector<double> t;
  nlohmann::json source;

  EngelStructure structure() const;
};

/// Throws ParseError; syntax errors carry "origin:line:column".
ManifoldSpec parse_manifold(const std::string& text, const std::string& origin = "<input>");
ManifoldSpec load_manifold(const std::string& path);

/// Polynomial from a list of [multi-index, coefficient] pairs.
Polynomial parse_polynomial(const nlohmann::json& j, const std::string& where);

} // namespace engelcr
