#pragma once

#include <fmt/format.h>
#include <json.hpp>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>

#include "cylinders/error.hpp"
#include "cylinders/geometry.hpp"
#include "cylinders/polynomial.hpp"

namespace cylinders {

using Json = nlohmann::ordered_json;

struct SimplexDoc {
  Simplex simplex;
  std::string label;
};

namespace detail {

inline std::pair<int, int> line_column(std::string_view text, std::size_t offset) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') ++line, col = 1;
    else ++col;
  }
  return {line, col};
}

// Line of the start of element `index` of the array stored under top-level
// key `key` (or of the key itself when index < 0). Zero when not found.
inline int locate(std::string_view text, std::string_view key, int index = -1) {
  int depth = 0;
  std::size_t i = 0;
  auto skip_string = [&] {
    for (++i; i < text.size() && text[i] != '"'; ++i)
      if (text[i] == '\\') ++i;
  };
  std::size_t key_at = std::string_view::npos;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '"') {
      const std::size_t start = i;
      skip_string();
      if (depth == 1 && text.substr(start + 1, i - start - 1) == key) {
        std::size_t j = i + 1;
        while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        if (j < text.size() && text[j] == ':') {
          key_at = start;
          i = j;
          break;
        }
      }
    } else if (c == '{' || c == '[') {
      ++depth;
    } else if (c == '}' || c == ']') {
      --depth;
    }
  }
  if (key_at == std::string_view::npos) return 0;
  if (index < 0) return line_column(text, key_at).first;
  while (i < text.size() && text[i] != '[') ++i;
  if (i >= text.size()) return line_column(text, key_at).first;
  const int base = depth + 1;
  depth = base;
  int element = 0;
  bool at_start = true;
  for (++i; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (depth == base && at_start && c != ']') {
      if (element == index) return line_column(text, i).first;
      at_start = false;
    }
    if (c == '"') {
      skip_string();
    } else if (c == '{' || c == '[') {
      ++depth;
    } else if (c == '}' || c == ']') {
      if (depth == base) break;
      --depth;
    } else if (c == ',' && depth == base) {
      ++element;
      at_start = true;
    }
  }
  return line_column(text, key_at).first;
}

inline std::string at_line(int line) { return line > 0 ? "line " + std::to_string(line) + ": " : ""; }

}  // namespace detail

/// Reads {"dim": n, "vertices": [[...], ...], "label": "..."}; messages carry
/// the line of the offending element.
inline SimplexDoc parse_simplex(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = detail::line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw Error(ErrorKind::schema_error, fmt::format("line {}, column {}: malformed JSON ({})", line,
                                                     col, e.what()));
  }
  if (!doc.is_object()) throw Error(ErrorKind::schema_error, "line 1: document must be a JSON object");
  for (const char* key : {"dim", "vertices"})
    if (!doc.contains(key))
      throw Error(ErrorKind::schema_error, fmt::format("missing required field \"{}\"", key));
  const auto& dim = doc["dim"];
  if (!dim.is_number_integer() || dim.get<std::int64_t>() < 2)
    throw Error(ErrorKind::schema_error,
                detail::at_line(detail::locate(text, "dim")) + "\"dim\" must be an integer >= 2");
  const int n = dim.get<int>();
  const auto& verts = doc["vertices"];
  if (!verts.is_array())
    throw Error(ErrorKind::schema_error,
                detail::at_line(detail::locate(text, "vertices")) + "\"vertices\" must be an array");
  if (static_cast<int>(verts.size()) != n + 1)
    throw Error(ErrorKind::shape_error,
                detail::at_line(detail::locate(text, "vertices")) +
                    fmt::format("expected {} vertices for dim {}, got {}", n + 1, n, verts.size()));
  Matrix m(n + 1, n);
  for (int i = 0; i <= n; ++i) {
    const auto& row = verts[i];
    const std::string where = detail::at_line(detail::locate(text, "vertices", i));
    if (!row.is_array())
      throw Error(ErrorKind::schema_error, where + fmt::format("vertex {} must be an array", i));
    if (static_cast<int>(row.size()) != n)
      throw Error(ErrorKind::shape_error,
                  where + fmt::format("vertex {} has {} coordinates, expected {}", i, row.size(), n));
    for (int k = 0; k < n; ++k) {
      if (!row[k].is_number())
        throw Error(ErrorKind::schema_error, where + fmt::format("vertex {} coordinate {} is not a number", i, k));
      m(i, k) = row[k].get<double>();
      if (!std::isfinite(m(i, k)))
        throw Error(ErrorKind::schema_error, where + fmt::format("vertex {} coordinate {} is not finite", i, k));
    }
  }
  SimplexDoc out;
  if (doc.contains("label")) {
    if (!doc["label"].is_string())
      throw Error(ErrorKind::schema_error,
                  detail::at_line(detail::locate(text, "label")) + "\"label\" must be a string");
    out.label = doc["label"].get<std::string>();
  }
  try {
    out.simplex = Simplex(m);
  } catch (const Error& e) {
    throw Error(e.kind(), detail::at_line(detail::locate(text, "vertices")) + e.what());
  }
  return out;
}

inline Json to_json(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

inline Json to_json(Complex z, double zero_tol = 0) {
  if (std::abs(z.imag()) <= zero_tol) return z.real();
  return Json::array({z.real(), z.imag()});
}

inline Json simplex_json(const Simplex& s, const std::string& label = {}) {
  Json doc;
  doc["dim"] = s.dim();
  if (!label.empty()) doc["label"] = label;
  doc["vertices"] = Json::array();
  for (int i = 0; i < s.size(); ++i) doc["vertices"].push_back(to_json(s.vertex(i)));
  return doc;
}

/// Doubles are written in shortest round-trip form, so parsing the output
/// reproduces every coordinate bit for bit.
inline std::string write_simplex(const Simplex& s, const std::string& label = {}) {
  return simplex_json(s, label).dump(2) + "\n";
}

/// Annotation a·√b/c for values whose square is a rational p/q with small
/// denominator; empty when nothing matches within `tol`.
inline std::optional<std::string> closed_form(double r, double tol = 1e-10) {
  if (!(r > 0) || !std::isfinite(r)) return std::nullopt;
  const double r2 = r * r;
  for (std::int64_t q = 1; q <= 400; ++q) {
    const double pq = r2 * static_cast<double>(q);
    const auto p = static_cast<std::int64_t>(std::llround(pq));
    if (p <= 0 || p > 100000) continue;
    if (std::abs(std::sqrt(static_cast<double>(p) / q) - r) > tol) continue;
    // r = sqrt(p q) / q = a sqrt(b) / c with b squarefree
    std::int64_t b = p * q, a = 1;
    for (std::int64_t f = 2; f * f <= b; ++f)
      while (b % (f * f) == 0) b /= f * f, a *= f;
    std::int64_t c = q;
    const std::int64_t g = std::gcd(a, c);
    a /= g, c /= g;
    std::string s = a == 1 && b != 1 ? "" : std::to_string(a);
    if (b != 1) s += "√" + std::to_string(b);
    if (c != 1) s += "/" + std::to_string(c);
    return s;
  }
  return std::nullopt;
}

inline Json radius_json(double r) {
  Json j;
  j["r"] = r;
  if (auto cf = closed_form(r)) j["closed_form"] = *cf;
  return j;
}

namespace detail {

inline std::string scalar_text(const Json& j) {
  if (j.is_number_float()) return fmt::format("{}", j.get<double>());
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

inline bool is_flat(const Json& j) {
  if (!j.is_array()) return !j.is_object();
  for (const auto& e : j)
    if (e.is_object() || (e.is_array() && !is_flat(e))) return false;
  return true;
}

inline std::string flat_text(const Json& j) {
  if (!j.is_array()) return scalar_text(j);
  std::string s = "[";
  for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + flat_text(j[i]);
  return s + "]";
}

inline void render(const Json& j, int indent, std::string& out) {
  const std::string pad(indent, ' ');
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (is_flat(value)) {
        out += pad + key + ": " + flat_text(value) + "\n";
      } else {
        out += pad + key + ":\n";
        render(value, indent + 2, out);
      }
    }
  } else if (j.is_array()) {
    for (const auto& e : j) {
      if (is_flat(e)) {
        out += pad + "- " + flat_text(e) + "\n";
      } else {
        out += pad + "-\n";
        render(e, indent + 2, out);
      }
    }
  } else {
    out += pad + scalar_text(j) + "\n";
  }
}

}  // namespace detail

/// Plain-text rendering of a report: same fields and numbers, indented.
inline std::string render_text(const Json& report) {
  std::string out;
  detail::render(report, 0, out);
  return out;
}

}  // namespace cylinders
