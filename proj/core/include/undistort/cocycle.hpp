#pragma once

#include <cstdint>
#include <optional>

#include "undistort/homeo.hpp"

namespace undistort {

// K(g)(x) = F(g~ x~) - F(x~) for the canonical lift of x.
double k_eval(const Homeo& g, const BasePoint& x);

// K(g) as a function on the base, optionally normalised to vanish at a pin.
class KFunction {
 public:
  explicit KFunction(Homeo g, std::optional<BasePoint> pin = std::nullopt);

  double operator()(const BasePoint& x) const { return k_eval(g_, x) - offset_; }
  // Value at a universal-cover point; independent of the lift chosen.
  double at_lift(const LiftPoint& p) const { return g_.displacement(p) - offset_; }

  const Homeo& homeo() const noexcept { return g_; }
  const std::optional<BasePoint>& pin() const noexcept { return pin_; }

 private:
  Homeo g_;
  std::optional<BasePoint> pin_;
  double offset_ = 0.0;
};

// Max over sampled x of |K(gh)(x) - K(g)(hx) - K(h)(x)|.
double k_identity_residual(const Homeo& g, const Homeo& h, std::size_t samples,
                           std::uint64_t seed = 1);

// Max over sampled x and deck shifts of |K(g)(lift) - K(g)(shifted lift)|.
double k_lift_residual(const Homeo& g, std::size_t samples, std::uint64_t seed = 1);

struct SeminormResult {
  double value = 0.0;  // grid max - grid min of K
  double sup = 0.0;
  double inf = 0.0;
  BasePoint argsup;
  BasePoint arginf;
  std::size_t per_axis = 0;
  std::size_t evaluations = 0;
  bool certified = false;
  // value + 2 (L+1) |pairing|_1 mesh when a Lipschitz constant L is known.
  double upper_bound = 0.0;
};

// sup_{x,y} |K(g)(y) - K(g)(x)| over Space::grid(resolution).
SeminormResult seminorm(const Homeo& g, std::size_t resolution = 256);

// G_x(g, h) = K(g)(hx) - K(g)(x).
double g_cocycle(const BasePoint& x, const Homeo& g, const Homeo& h);

}  // namespace undistort
