#pragma once

// Hand-rolled random generators for property tests.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "undistort/undistort.hpp"

namespace gen {

using undistort::ExactAngle;
using undistort::Homeo;
using undistort::PLCircleMap;
using undistort::Rational;
using undistort::Space;

inline Rational small_rational(std::mt19937_64& rng, int max_num = 7, int max_den = 8) {
  std::uniform_int_distribution<int> num(-max_num, max_num);
  std::uniform_int_distribution<int> den(1, max_den);
  return Rational(num(rng), den(rng));
}

// A random PL circle map with rational data: k breakpoints in [0,1) and
// increasing lifted values with positive gaps.
inline PLCircleMap random_pl(std::mt19937_64& rng, int k = 3) {
  std::uniform_int_distribution<int> step(1, 6);
  std::vector<Rational> at;
  std::vector<Rational> raw_x;
  Rational x = 0;
  for (int i = 0; i < k; ++i) {
    x += step(rng);
    raw_x.push_back(x);
  }
  const Rational total_x = x + step(rng);
  std::vector<Rational> raw_y;
  Rational y = 0;
  for (int i = 0; i < k; ++i) {
    y += step(rng);
    raw_y.push_back(y);
  }
  const Rational total_y = y + step(rng);
  const Rational offset(std::uniform_int_distribution<int>(0, 11)(rng), 12);
  std::vector<PLCircleMap::Node> nodes;
  for (int i = 0; i < k; ++i) {
    nodes.push_back({raw_x[static_cast<std::size_t>(i)] / total_x - raw_x.front() / total_x,
                     raw_y[static_cast<std::size_t>(i)] / total_y + offset});
  }
  return PLCircleMap::from_lift_nodes(std::move(nodes));
}

inline ExactAngle random_angle(std::mt19937_64& rng) {
  ExactAngle a(small_rational(rng));
  if (std::uniform_int_distribution<int>(0, 1)(rng)) {
    a += ExactAngle::symbol(undistort::Irrational::Sqrt2, small_rational(rng, 3, 4));
  }
  return a;
}

// A random element of one of the built-in families on `space`.
inline Homeo random_family_member(std::mt19937_64& rng, const Space& space) {
  using undistort::SpaceKind;
  std::uniform_int_distribution<int> pick(0, 2);
  switch (space.kind()) {
    case SpaceKind::Circle:
      switch (pick(rng)) {
        case 0: return Homeo::rigid_rotation(random_angle(rng), space);
        case 1: return Homeo::gradient_time_one(Rational(std::uniform_int_distribution<int>(-2, 2)(rng), 16), space);
        default: return Homeo::pl(random_pl(rng), space);
      }
    case SpaceKind::Annulus:
      return Homeo::annulus_twist(random_angle(rng), random_angle(rng), space);
    case SpaceKind::Torus2:
      return Homeo::torus_twist(small_rational(rng, 5, 4), space);
    case SpaceKind::CircleTimesCompactifiedLine:
      return Homeo::torus_shear(std::uniform_int_distribution<int>(-5, 5)(rng), space);
  }
  return Homeo::identity(space);
}

inline std::vector<Space> all_spaces() {
  return {Space::circle(), Space::annulus(), Space::torus2(1, 0), Space::torus2(2, -1),
          Space::circle_times_line(1, 0), Space::circle_times_line(1, 1)};
}

// A random polyline with 1 to 5 segments and small windings; `close` ends
// it at its start.
inline undistort::Path random_polyline(const Space& space, std::mt19937_64& rng, bool close = false) {
  std::uniform_int_distribution<int> segs(1, 5);
  std::uniform_int_distribution<int> turns(-2, 2);
  undistort::Path path{space.random_point(rng), {}};
  const int n = segs(rng);
  for (int i = 0; i < n; ++i) {
    undistort::PathSegment seg{space.random_point(rng), {turns(rng), 0}};
    if (space.second_is_angular()) seg.winding[1] = turns(rng);
    if (close && i + 1 == n) seg.to = path.start;
    path.segments.push_back(seg);
  }
  return path;
}

// Winding class of a closed polyline, counted from its lift.
inline undistort::Winding loop_class(const Space& space, const undistort::Path& loop) {
  const auto v = undistort::lift_path(space, loop, space.canonical_lift(loop.start));
  const auto a0 = space.angles(v.front());
  const auto a1 = space.angles(v.back());
  return {std::llround(a1[0] - a0[0]), std::llround(a1[1] - a0[1])};
}

}  // namespace gen
