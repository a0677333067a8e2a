#pragma once

// Line-oriented scenario files.
//
//   # comment
//   [space]
//   kind = annulus
//   [homeo T]
//   family = annulus-twist
//   rho0 = 0
//   rho1 = 1/2
//   [analysis cert]
//   kind = certify-rotation
//   homeo = T
//
// Sections are `[type]` or `[type name]`; every other non-blank line is
// `key = value`. Numbers accept rational literals (p/q), decimals and inf.
// A [space] section applies to everything after it until the next one; the
// default space is the circle with class 1.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "undistort/homeo.hpp"
#include "undistort/measure.hpp"
#include "undistort/space.hpp"
#include "undistort/wordgeom.hpp"

namespace undistort {

struct ScenarioEntry {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

struct ScenarioSection {
  std::string type;
  std::string name;
  std::size_t line = 0;
  std::vector<ScenarioEntry> entries;
};

// Splits text into sections. Throws ParseError on malformed lines.
std::vector<ScenarioSection> parse_sections(std::string_view text);

struct AnalysisSpec {
  std::string name;
  std::string kind;
  std::size_t line = 0;
  // Index into Scenario::spaces of the space in force at the declaration.
  std::size_t space = 0;
  // Validated key/value pairs.
  std::map<std::string, ScenarioEntry> params;

  bool has(const std::string& key) const { return params.count(key) != 0; }
  const std::string& get(const std::string& key) const { return params.at(key).value; }
  std::int64_t integer(const std::string& key, std::int64_t fallback) const;
  std::optional<double> real(const std::string& key) const;
  std::vector<std::string> list(const std::string& key) const;
};

struct NamedHomeo {
  std::string name;
  std::string spec;
  Homeo map;
};

struct Scenario {
  std::vector<Space> spaces{Space::circle()};
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> budget;
  std::vector<NamedHomeo> homeos;
  std::map<std::string, BasePoint> points;
  std::map<std::string, Path> paths;
  std::map<std::string, Measure> measures;
  std::map<std::string, GenSet> gensets;
  std::vector<AnalysisSpec> analyses;

  const Homeo& homeo(const std::string& name) const;
};

// Parses and resolves a scenario. Syntax errors, unknown keys, unknown
// analyses and unresolved names raise ParseError; semantic problems (a point
// outside its space, unnormalised weights) raise PreconditionError.
Scenario load_scenario(std::string_view text);

// "u v" with rational literals and inf.
BasePoint parse_point(std::string_view text, const Space& space);

// Catalog of spaces, families, sections and analyses with their keys.
std::string list_families();

}  // namespace undistort
