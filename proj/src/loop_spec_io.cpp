#include "holotel/loop_spec_io.hpp"

#include <charconv>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"

namespace holotel {
namespace {

using nlohmann::json;

double to_double(std::string_view s, const std::string& field) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError(field, "cannot read number '" + std::string(s) + "'");
  }
  return v;
}

double number_at(const json& node, const std::string& field) {
  if (node.is_number()) return node.get<double>();
  if (node.is_string()) return parse_angle(node.get<std::string>(), field);
  throw ParseError(field, "expected a number");
}

const json& require(const json& doc, const char* key) {
  if (!doc.contains(key)) throw ParseError(key, "missing field");
  return doc.at(key);
}

template <typename Fn>
auto with_field(const std::string& field, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(field, e.what());
  }
}

AreaKind default_area_kind(const std::pair<CoordinateId, CoordinateId>& plane) {
  const auto [a, b] = plane;
  if (!a.is_manifold() || !b.is_manifold()) return AreaKind::squeezed_exponential;
  if (a.kind == CoordinateKind::theta && b.kind == CoordinateKind::theta) return AreaKind::plane_cosine;
  return AreaKind::half_solid_angle;
}

}  // namespace

double parse_angle(std::string_view text, const std::string& field) {
  std::string s;
  for (char c : text) {
    if (c != ' ') s.push_back(c);
  }
  const auto pos = s.find("pi");
  if (pos == std::string::npos) return to_double(s, field);

  double factor = 1.0;
  std::string_view head(s.data(), pos);
  if (head == "-") {
    factor = -1.0;
  } else if (!head.empty()) {
    if (head.back() != '*') throw ParseError(field, "cannot read '" + s + "'");
    head.remove_suffix(1);
    factor = to_double(head, field);
  }
  double value = factor * std::numbers::pi;
  std::string_view tail(s.data() + pos + 2, s.size() - pos - 2);
  if (!tail.empty()) {
    if (tail.front() != '/') throw ParseError(field, "cannot read '" + s + "'");
    const double divisor = to_double(tail.substr(1), field);
    if (divisor == 0.0) throw ParseError(field, "division by zero");
    value /= divisor;
  }
  return value;
}

LoopSpec parse_loop_spec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("document", e.what());
  }
  if (!doc.is_object()) throw ParseError("document", "expected a JSON object");

  LoopSpec loop;
  loop.n = with_field("n", [&] { return require(doc, "n").get<int>(); });

  with_field("plane", [&] {
    const json& plane = require(doc, "plane");
    if (!plane.is_array() || plane.size() != 2) throw ParseError("plane", "expected two coordinate names");
    loop.plane = {CoordinateId::parse(plane[0].get<std::string>()),
                  CoordinateId::parse(plane[1].get<std::string>())};
    return 0;
  });

  with_field("bounds", [&] {
    const json& bounds = require(doc, "bounds");
    if (!bounds.is_array() || bounds.size() != 2) throw ParseError("bounds", "expected [[lo, hi], [lo, hi]]");
    Interval* dst[2] = {&loop.first, &loop.second};
    for (std::size_t k = 0; k < 2; ++k) {
      if (!bounds[k].is_array() || bounds[k].size() != 2) {
        throw ParseError("bounds", "expected [[lo, hi], [lo, hi]]");
      }
      dst[k]->lo = number_at(bounds[k][0], "bounds");
      dst[k]->hi = number_at(bounds[k][1], "bounds");
    }
    return 0;
  });

  if (doc.contains("fixed")) {
    with_field("fixed", [&] {
      const json& fixed = doc.at("fixed");
      if (!fixed.is_object()) throw ParseError("fixed", "expected an object of coordinate: value");
      for (const auto& [name, value] : fixed.items()) {
        loop.fixed.emplace_back(CoordinateId::parse(name), number_at(value, "fixed"));
      }
      return 0;
    });
  }
  if (doc.contains("steps")) loop.steps = with_field("steps", [&] { return doc.at("steps").get<int>(); });
  if (doc.contains("orientation")) {
    loop.orientation = with_field("orientation", [&] { return doc.at("orientation").get<int>(); });
  }
  if (doc.contains("kind")) {
    loop.kind = with_field("kind", [&] { return parse_area_kind(doc.at("kind").get<std::string>()); });
  } else {
    loop.kind = default_area_kind(loop.plane);
  }

  try {
    loop.validate();
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    const auto colon = msg.find(':');
    throw ParseError(colon == std::string::npos ? "document" : msg.substr(0, colon),
                     colon == std::string::npos ? msg : msg.substr(colon + 2));
  }
  return loop;
}

std::string serialize_loop_spec(const LoopSpec& loop) {
  json doc;
  doc["n"] = loop.n;
  doc["plane"] = {loop.plane.first.name(), loop.plane.second.name()};
  doc["bounds"] = {{loop.first.lo, loop.first.hi}, {loop.second.lo, loop.second.hi}};
  json fixed = json::object();
  for (const auto& [id, value] : loop.fixed) fixed[id.name()] = value;
  doc["fixed"] = fixed;
  doc["steps"] = loop.steps;
  doc["orientation"] = loop.orientation;
  doc["kind"] = to_string(loop.kind);
  return doc.dump(2) + "\n";
}

LoopSpec load_loop_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("document", "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_loop_spec(buf.str());
}

}  // namespace holotel
