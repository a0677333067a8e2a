#include "undistort/cocycle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "undistort/parallel.hpp"

namespace undistort {

double k_eval(const Homeo& g, const BasePoint& x) {
  return g.displacement(g.space().canonical_lift(x));
}

KFunction::KFunction(Homeo g, std::optional<BasePoint> pin) : g_(std::move(g)), pin_(pin) {
  if (pin_) offset_ = k_eval(g_, *pin_);
}

double k_identity_residual(const Homeo& g, const Homeo& h, std::size_t samples,
                           std::uint64_t seed) {
  const Homeo gh = compose(g, h);
  const Space& s = g.space();
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const BasePoint x = s.random_point(rng);
    const double lhs = k_eval(gh, x);
    const double rhs = k_eval(g, h(x)) + k_eval(h, x);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

double k_lift_residual(const Homeo& g, std::size_t samples, std::uint64_t seed) {
  const Space& s = g.space();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> shift(-3, 3);
  double worst = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const LiftPoint p = s.canonical_lift(s.random_point(rng));
    const LiftPoint q = s.deck(p, {shift(rng), s.second_is_angular() ? shift(rng) : 0});
    worst = std::max(worst, std::abs(g.displacement(p) - g.displacement(q)));
  }
  return worst;
}

SeminormResult seminorm(const Homeo& g, std::size_t resolution) {
  const Space& s = g.space();
  const std::vector<BasePoint> grid = s.grid(resolution);
  std::vector<double> values(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { values[i] = k_eval(g, grid[i]); });

  SeminormResult out;
  out.per_axis = Space::grid_axis(resolution);
  out.evaluations = grid.size();
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  out.sup = *hi;
  out.inf = *lo;
  out.argsup = grid[static_cast<std::size_t>(hi - values.begin())];
  out.arginf = grid[static_cast<std::size_t>(lo - values.begin())];
  out.value = out.sup - out.inf;
  out.upper_bound = out.value;
  if (const auto l = g.lipschitz(); l && s.kind() != SpaceKind::CircleTimesCompactifiedLine) {
    out.certified = true;
    out.upper_bound += 2.0 * (*l + 1.0) * s.pairing_norm() * Space::grid_mesh(resolution);
  }
  return out;
}

double g_cocycle(const BasePoint& x, const Homeo& g, const Homeo& h) {
  return k_eval(g, h(x)) - k_eval(g, x);
}

}  // namespace undistort
