#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "holotel/control_manifold.hpp"

namespace holotel {

/// Input-document error that names the offending field.
class ParseError : public std::invalid_argument {
 public:
  ParseError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Loop-spec documents are JSON objects:
///
///   {
///     "n": 2,
///     "plane": ["theta1", "phi1"],
///     "bounds": [[0, "pi/3"], [0, "pi/2"]],
///     "fixed": {"theta2": 0},
///     "steps": 1024,
///     "orientation": 1,
///     "kind": "half-solid-angle"
///   }
///
/// When "kind" is omitted it follows the plane: half-solid-angle for a
/// (theta, phi) plane, plane-cosine for (theta, theta), squeezed-exponential
/// for optical coordinates.
/// Numbers may also be written as strings of the form "[-][k*]pi[/m]".
/// Serialization writes plain numbers with round-trip precision, so
/// parse(serialize(parse(text))) == parse(text).
LoopSpec parse_loop_spec(std::string_view text);
std::string serialize_loop_spec(const LoopSpec& loop);
LoopSpec load_loop_spec(const std::filesystem::path& path);

/// Reads a number or a pi-expression string; throws ParseError naming `field`.
double parse_angle(std::string_view text, const std::string& field);

}  // namespace holotel
