#include "undistort/format.hpp"

#include <cmath>

#include <fmt/format.h>

namespace undistort {

std::string format_real(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  if (x == 0.0) return "0";
  return fmt::format("{}", x);
}

std::string format_point(const BasePoint& p, SpaceKind kind) {
  if (kind == SpaceKind::Circle) return "(" + format_real(p.u) + ")";
  return "(" + format_real(p.u) + "," + format_real(p.v) + ")";
}

}  // namespace undistort
