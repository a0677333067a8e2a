#pragma once

#include <string>

#include "undistort/space.hpp"

namespace undistort {

// Shortest round-trip decimal text; "inf" and "-inf" for infinities.
std::string format_real(double x);
// "(u,v)" in the coordinates of `kind` ("(u)" on the circle).
std::string format_point(const BasePoint& p, SpaceKind kind);

}  // namespace undistort
