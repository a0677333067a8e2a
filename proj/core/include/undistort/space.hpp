#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace undistort {

enum class SpaceKind : std::uint8_t {
  Circle,                       // R/Z
  Annulus,                      // R/Z x [0,1]
  Torus2,                       // R/Z x R/Z
  CircleTimesCompactifiedLine,  // R/Z x (R u {inf})
};

std::string_view to_string(SpaceKind kind);
SpaceKind parse_space_kind(std::string_view name);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
// Tolerance used whenever a real number is tested for being an integer.
inline constexpr double kIntegerTolerance = 1e-9;

// A point of the base space. `u` is always the first angle in [0,1). `v` is
// unused on the circle, the radius in [0,1] on the annulus, the second angle in
// [0,1) on the torus and the line coordinate on the compactified line, where
// +inf stands for the point at infinity.
struct BasePoint {
  double u = 0.0;
  double v = 0.0;

  friend bool operator==(const BasePoint&, const BasePoint&) = default;
};

// A point of the universal cover. Angle coordinates are unwrapped reals. On the
// compactified line `v` stays the line coordinate and `v_turns` counts the
// passages through infinity, so the unwrapped second angle is
// v_turns + line_angle(v).
struct LiftPoint {
  double u = 0.0;
  double v = 0.0;
  std::int64_t v_turns = 0;
};

// A point of the cyclic cover X_a: a base point together with a real height.
// Deck translations act by sheet -> sheet + k.
struct CoverPoint {
  BasePoint base;
  double sheet = 0.0;
};

using Winding = std::array<std::int64_t, 2>;

// The compactified line as a circle: x -> atan(x)/pi + 1/2 in (0,1), inf -> 0.
double line_angle(double x);
// Inverse of line_angle on [0,1): 0 maps to infinity.
double line_from_angle(double angle);

// A supported base space together with an integral degree-one class, given by
// its pairing with a fixed basis of H_1.
class Space {
 public:
  Space(SpaceKind kind, std::vector<std::int64_t> pairing, bool allow_zero_class = false);

  static Space circle(std::int64_t k = 1);
  static Space annulus(std::int64_t k = 1);
  static Space torus2(std::int64_t k1 = 1, std::int64_t k2 = 0);
  static Space circle_times_line(std::int64_t k1 = 1, std::int64_t k2 = 0);

  SpaceKind kind() const noexcept { return kind_; }
  const std::vector<std::int64_t>& pairing() const noexcept { return pairing_; }
  std::size_t basis_size() const noexcept { return pairing_.size(); }
  // True when the second coordinate is a (possibly compactified) angle.
  bool second_is_angular() const noexcept;
  // Sum of |pairing|; Lipschitz constant of the potential in angle coordinates.
  double pairing_norm() const noexcept;

  std::int64_t pair(const Winding& winding) const;

  BasePoint basepoint() const noexcept { return {}; }
  void validate(const BasePoint& p) const;
  // Reduces angle coordinates to [0,1) and maps -inf to +inf.
  BasePoint wrap(BasePoint p) const;

  LiftPoint canonical_lift(const BasePoint& p) const;
  BasePoint project(const LiftPoint& p) const;
  // Unwrapped angle coordinates; the second entry is 0 on circle and annulus.
  std::array<double, 2> angles(const LiftPoint& p) const;
  LiftPoint deck(LiftPoint p, const Winding& k) const;

  // The built-in equivariant potential F = <pairing, unwrapped angles>.
  double potential(const LiftPoint& p) const;
  // F restricted to canonical lifts.
  double potential(const BasePoint& p) const { return potential(canonical_lift(p)); }

  // The sheet of a universal-cover point is F(p) - F(canonical lift of base).
  CoverPoint to_cover(const LiftPoint& p) const;

  // Max-norm distance in angle/chart coordinates, respecting periodicity.
  double distance(const BasePoint& a, const BasePoint& b) const;

  // Nested uniform grid over a fundamental domain. `per_axis` is rounded up to
  // a power of two so that grids for larger resolutions contain smaller ones.
  std::vector<BasePoint> grid(std::size_t per_axis) const;
  // Half the spacing of grid(per_axis) in angle coordinates.
  static double grid_mesh(std::size_t per_axis);
  static std::size_t grid_axis(std::size_t resolution);

  BasePoint random_point(std::mt19937_64& rng) const;

  std::string describe() const;

  friend bool operator==(const Space&, const Space&) = default;

 private:
  SpaceKind kind_;
  std::vector<std::int64_t> pairing_;
};

// A polyline segment: straight in angle coordinates, with `winding` extra full
// turns per angle factor.
struct PathSegment {
  BasePoint to;
  Winding winding{};
};

struct Path {
  BasePoint start;
  std::vector<PathSegment> segments;

  BasePoint end() const { return segments.empty() ? start : segments.back().to; }
  bool is_loop(const Space& space) const;
};

Path straight_path(const BasePoint& from, const BasePoint& to);
// The i-th basis loop of H_1 based at the basepoint.
Path basis_loop(const Space& space, std::size_t i);

// Vertices of the lift of `path` starting at `start`. Throws DomainError when a
// vertex leaves the coordinate domain.
std::vector<LiftPoint> lift_path(const Space& space, const Path& path, const LiftPoint& start);
// Point at parameter s in [0,1] of the straight lifted segment a -> b.
LiftPoint interpolate(const Space& space, const LiftPoint& a, const LiftPoint& b, double s);
// Vertices plus `per_segment - 1` interior points per segment.
std::vector<LiftPoint> sample_lifted_path(const Space& space, const Path& path,
                                          const LiftPoint& start, std::size_t per_segment);

enum class PotentialSource : std::uint8_t { BuiltIn, FromCocycle };

// The equivariant function F on the cyclic cover.
class Potential {
 public:
  using Function = std::function<double(const CoverPoint&)>;

  Potential(Space space, Function eval, PotentialSource source, double modulus);

  static Potential built_in(const Space& space);

  double operator()(const CoverPoint& p) const { return eval_(p); }
  const Space& space() const noexcept { return space_; }
  PotentialSource source() const noexcept { return source_; }
  // Bound on |dF| per unit max-norm length in angle coordinates.
  double modulus() const noexcept { return modulus_; }

 private:
  Space space_;
  Function eval_;
  PotentialSource source_;
  double modulus_;
};

// A real-valued functional on polylines: additive under concatenation and
// integer-valued on loops.
class PathIntegralCocycle {
 public:
  using Function = std::function<double(const Path&)>;

  PathIntegralCocycle(Space space, Function integrate, double modulus, std::string description);

  // The signed angular variation paired with the class: <pairing, delta angles>.
  static PathIntegralCocycle standard(const Space& space);
  // <weights, delta angles> + f(end) - f(start). `f_lipschitz` bounds f in
  // angle coordinates.
  static PathIntegralCocycle linear(const Space& space, std::vector<std::int64_t> weights,
                                    std::function<double(const BasePoint&)> exact_part = {},
                                    double f_lipschitz = 0.0);

  double integrate(const Path& path) const { return integrate_(path); }
  const Space& space() const noexcept { return space_; }
  double modulus() const noexcept { return modulus_; }
  const std::string& description() const noexcept { return description_; }

 private:
  Space space_;
  Function integrate_;
  double modulus_;
  std::string description_;
};

// Builds the equivariant potential P with P(basepoint) = 0 whose increments
// along lifted paths reproduce `c`. Throws ClassMismatchError when `c`
// disagrees with the class pairing on a basis loop.
Potential potential_from_cocycle(const Space& space, const PathIntegralCocycle& c,
                                 const CoverPoint& basepoint);

// integrate(gamma) = P(lift of end) - P(lift of start) along a continuous lift.
PathIntegralCocycle cocycle_from_potential(const Space& space, const Potential& p);

// Max over sampled (point, k in -3..3) of |P(base, h+k) - P(base, h) - k|.
double verify_equivariance(const Potential& p, std::size_t samples, std::uint64_t seed = 1);

}  // namespace undistort
