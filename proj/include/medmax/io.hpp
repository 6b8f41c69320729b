#pragma once

// JSON forms of grids, cell sets, step curves and maximal fields.  Rationals
// travel as strings "p/q"; integers may also be given as JSON numbers.

#include "medmax/grid.hpp"
#include "medmax/maximal.hpp"
#include "medmax/step_curve.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace medmax::io {

using json = nlohmann::ordered_json;

inline Rational rational_of(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw Error("expected a rational, got " + j.dump());
}

inline std::vector<std::size_t> shape_of(const json& j) {
  if (!j.contains("shape") || !j["shape"].is_array()) throw Error("missing shape");
  std::vector<std::size_t> s;
  for (const auto& x : j["shape"]) {
    if (!x.is_number_integer() || x.get<long long>() <= 0) throw Error("shape entries must be positive integers");
    s.push_back(x.get<std::size_t>());
  }
  if (j.contains("dim") && j["dim"].get<std::size_t>() != s.size()) throw Error("dim does not match shape");
  return s;
}

inline Geometry geometry_of(const json& j) {
  return Geometry(shape_of(j), j.contains("h") ? rational_of(j["h"]) : Rational(1));
}

inline json to_json(const Geometry& g) {
  json j;
  j["dim"] = g.dim();
  j["shape"] = g.shape;
  j["h"] = to_string(g.h);
  return j;
}

inline json to_json(const GridFunction& f) {
  json j = to_json(f.geometry());
  json v = json::array();
  for (const auto& x : f.values()) v.push_back(to_string(x));
  j["values"] = std::move(v);
  return j;
}

inline GridFunction grid_from_json(const json& j) {
  const Geometry g = geometry_of(j);
  if (!j.contains("values") || !j["values"].is_array()) throw Error("missing values");
  std::vector<Rational> v;
  for (const auto& x : j["values"]) v.push_back(rational_of(x));
  return GridFunction(g, std::move(v));
}

inline json to_json(const CellSet& s) {
  json j = to_json(s.geometry());
  j.erase("h");
  json m = json::array();
  for (auto x : s.mask()) m.push_back(int(x));
  j["mask"] = std::move(m);
  return j;
}

// The grid supplies h; a mask file carries only the shape.
inline CellSet mask_from_json(const json& j, const Geometry& g) {
  if (shape_of(j) != g.shape) throw Error("mask shape does not match the grid");
  std::vector<std::uint8_t> m;
  for (const auto& x : j.at("mask")) {
    if (!x.is_number_integer() || (x.get<int>() != 0 && x.get<int>() != 1)) throw Error("mask entries must be 0 or 1");
    m.push_back(static_cast<std::uint8_t>(x.get<int>()));
  }
  return CellSet(g, std::move(m));
}

inline json to_json(const StepCurve& c) {
  json out = json::array();
  const char* side = c.side() == Continuity::right ? "right" : "left";
  if (c.side() == Continuity::left) out.push_back({{"t", "0"}, {"v", c.at_origin().str()}, {"side", "point"}});
  for (std::size_t i = 0; i < c.segments(); ++i)
    out.push_back({{"t", to_string(c.breaks()[i])}, {"v", c.values()[i].str()}, {"side", side}});
  return out;
}

inline StepCurve curve_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw Error("a step curve is a non-empty array");
  std::vector<Rational> b;
  std::vector<ExtRational> v;
  std::optional<ExtRational> origin;
  std::string side = "right";
  for (const auto& e : j) {
    const std::string s = e.at("side").get<std::string>();
    if (s == "point") {
      origin = parse_ext_rational(e.at("v").get<std::string>());
      continue;
    }
    if (s != "right" && s != "left") throw Error("unknown continuity side: " + s);
    side = s;
    b.push_back(rational_of(e.at("t")));
    v.push_back(parse_ext_rational(e.at("v").get<std::string>()));
  }
  if (side == "left") return StepCurve::left(b, v, origin.value_or(ExtRational::infinity()));
  return StepCurve::right(b, v);
}

inline json to_json(const MaximalField& m) {
  json j;
  j["op"] = to_string(m.op);
  j["kernel"] = to_string(m.provenance);
  j["family"] = "grid-aligned";
  j["shape"] = m.geometry.shape;
  j["h"] = to_string(m.geometry.h);
  json v = json::array();
  for (const auto& x : m.values) v.push_back(x.str());
  j["values"] = std::move(v);
  return j;
}

inline json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error("malformed JSON in " + path + ": " + e.what());
  }
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

inline GridFunction read_grid(const std::string& path) {
  try {
    return grid_from_json(read_json(path));
  } catch (const json::exception& e) {
    throw Error("malformed grid file " + path + ": " + e.what());
  }
}

}  // namespace medmax::io
