#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <string>

#include "holotel/loop_spec_io.hpp"

using namespace holotel;

namespace {

constexpr double kPi = std::numbers::pi;

const char* const kExample = R"({
  "n": 2,
  "plane": ["theta1", "phi1"],
  "bounds": [[0, "pi/3"], [0, "pi/2"]],
  "fixed": {"theta2": 0, "phi2": 0.25},
  "steps": 512,
  "orientation": -1,
  "kind": "half-solid-angle"
})";

std::string field_of(const std::string& text) {
  try {
    parse_loop_spec(text);
  } catch (const ParseError& e) {
    return e.field();
  }
  return "";
}

}  // namespace

TEST_CASE("angle expressions") {
  CHECK(parse_angle("pi", "f") == kPi);
  CHECK(parse_angle("pi/3", "f") == kPi / 3);
  CHECK(parse_angle("-pi/2", "f") == -kPi / 2);
  CHECK(parse_angle("3*pi/4", "f") == 3 * kPi / 4);
  CHECK(parse_angle("0.5", "f") == 0.5);
  CHECK_THROWS_AS(parse_angle("pie", "f"), ParseError);
  CHECK_THROWS_AS(parse_angle("3pi", "f"), ParseError);
  CHECK_THROWS_AS(parse_angle("pi/0", "f"), ParseError);
}

TEST_CASE("example document parses") {
  const LoopSpec loop = parse_loop_spec(kExample);
  CHECK(loop.n == 2);
  CHECK(loop.plane.first == CoordinateId::theta(1));
  CHECK(loop.plane.second == CoordinateId::phi(1));
  CHECK(loop.first.hi == kPi / 3);
  CHECK(loop.second.hi == kPi / 2);
  CHECK(loop.fixed.size() == 2);
  CHECK(loop.steps == 512);
  CHECK(loop.orientation == -1);
  CHECK(loop.kind == AreaKind::half_solid_angle);
}

TEST_CASE("defaults for optional fields") {
  const LoopSpec loop = parse_loop_spec(R"({"n": 2, "plane": ["theta2", "theta1"], "bounds": [[0, 1], [0, 0.5]]})");
  CHECK(loop.steps == 1024);
  CHECK(loop.orientation == 1);
  CHECK(loop.fixed.empty());
}

TEST_CASE("serialization round-trips exactly") {
  const LoopSpec once = parse_loop_spec(kExample);
  const std::string text = serialize_loop_spec(once);
  const LoopSpec twice = parse_loop_spec(text);
  CHECK(twice == once);
  CHECK(serialize_loop_spec(twice) == text);
}

TEST_CASE("round trip preserves awkward doubles bit for bit") {
  LoopSpec loop;
  loop.n = 3;
  loop.plane = {CoordinateId::theta(3), CoordinateId::phi(2)};
  loop.first = {0.1, std::nextafter(1.0, 2.0)};
  loop.second = {1.0 / 3.0, 2.0 * kPi / 3.0};
  loop.fixed = {{CoordinateId::phi(1), 1e-300}, {CoordinateId::theta(1), kPi / 7}};
  loop.kind = AreaKind::sphere_cosine;
  loop.validate();
  const LoopSpec back = parse_loop_spec(serialize_loop_spec(loop));
  CHECK(back.first.hi == loop.first.hi);
  CHECK(back.second.lo == loop.second.lo);
  CHECK(parse_loop_spec(serialize_loop_spec(back)) == back);
}

TEST_CASE("errors name the offending field") {
  CHECK(field_of("{") == "document");
  CHECK(field_of("[1, 2]") == "document");
  CHECK(field_of(R"({"plane": ["theta1", "phi1"], "bounds": [[0, 1], [0, 1]]})") == "n");
  CHECK(field_of(R"({"n": 2, "plane": ["theta1"], "bounds": [[0, 1], [0, 1]]})") == "plane");
  CHECK(field_of(R"({"n": 2, "plane": ["theta1", "psi"], "bounds": [[0, 1], [0, 1]]})") == "plane");
  CHECK(field_of(R"({"n": 2, "plane": ["theta1", "phi1"], "bounds": [[0, 1]]})") == "bounds");
  CHECK(field_of(R"({"n": 2, "plane": ["theta1", "phi1"], "bounds": [[1, 0], [0, 1]]})") == "bounds");
  CHECK(field_of(R"({"n": 2, "plane": ["theta1", "phi1"], "bounds": [[0, "tau"], [0, 1]]})") == "bounds");
  CHECK(field_of(R"({"n": 2, "plane": ["theta1", "phi1"], "bounds": [[0, 4], [0, 1]]})") == "bounds");
  CHECK(field_of(R"({"n": 2, "plane": ["theta1", "phi1"], "bounds": [[0, 1], [0, 1]], "steps": 4})") == "steps");
  CHECK(field_of(R"({"n": 2, "plane": ["theta1", "phi1"], "bounds": [[0, 1], [0, 1]], "kind": "round"})") == "kind");
  CHECK(field_of(R"({"n": 2, "plane": ["theta1", "phi1"], "bounds": [[0, 1], [0, 1]], "fixed": {"theta1": 0}})") == "fixed");
  CHECK(field_of(R"({"n": 2, "plane": ["theta1", "phi1"], "bounds": [[0, 1], [0, 1]], "orientation": 2})") == "orientation");
}

TEST_CASE("missing file") {
  CHECK_THROWS_AS(load_loop_spec("/nonexistent/loop.json"), ParseError);
}
