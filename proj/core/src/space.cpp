#include "undistort/space.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <utility>

#include <fmt/format.h>

#include "undistort/errors.hpp"

namespace undistort {

std::string_view to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::Circle: return "circle";
    case SpaceKind::Annulus: return "annulus";
    case SpaceKind::Torus2: return "torus2";
    case SpaceKind::CircleTimesCompactifiedLine: return "circle-x-line";
  }
  return "?";
}

SpaceKind parse_space_kind(std::string_view name) {
  for (auto kind : {SpaceKind::Circle, SpaceKind::Annulus, SpaceKind::Torus2,
                    SpaceKind::CircleTimesCompactifiedLine}) {
    if (to_string(kind) == name) return kind;
  }
  throw PreconditionError("unknown space kind '" + std::string(name) + "'");
}

double line_angle(double x) {
  if (std::isinf(x)) return 0.0;
  return std::atan(x) / std::numbers::pi + 0.5;
}

double line_from_angle(double angle) {
  if (angle == 0.0) return kInfinity;
  return std::tan(std::numbers::pi * (angle - 0.5));
}

namespace {

double wrap_unit(double x) {
  const double r = x - std::floor(x);
  return r >= 1.0 ? 0.0 : r;
}

double circular_gap(double a, double b) {
  const double d = std::abs(wrap_unit(a) - wrap_unit(b));
  return std::min(d, 1.0 - d);
}

std::size_t expected_basis(SpaceKind kind) {
  return kind == SpaceKind::Circle || kind == SpaceKind::Annulus ? 1 : 2;
}

}  // namespace

Space::Space(SpaceKind kind, std::vector<std::int64_t> pairing, bool allow_zero_class)
    : kind_(kind), pairing_(std::move(pairing)) {
  if (pairing_.size() != expected_basis(kind_)) {
    throw PreconditionError(fmt::format("{} needs a class pairing of length {}, got {}",
                                        to_string(kind_), expected_basis(kind_), pairing_.size()));
  }
  const bool zero = std::all_of(pairing_.begin(), pairing_.end(), [](auto k) { return k == 0; });
  if (zero && !allow_zero_class) {
    throw PreconditionError("class pairing is zero; construct the zero class explicitly");
  }
}

Space Space::circle(std::int64_t k) { return {SpaceKind::Circle, {k}}; }
Space Space::annulus(std::int64_t k) { return {SpaceKind::Annulus, {k}}; }
Space Space::torus2(std::int64_t k1, std::int64_t k2) { return {SpaceKind::Torus2, {k1, k2}}; }
Space Space::circle_times_line(std::int64_t k1, std::int64_t k2) {
  return {SpaceKind::CircleTimesCompactifiedLine, {k1, k2}};
}

bool Space::second_is_angular() const noexcept {
  return kind_ == SpaceKind::Torus2 || kind_ == SpaceKind::CircleTimesCompactifiedLine;
}

double Space::pairing_norm() const noexcept {
  double n = 0.0;
  for (auto k : pairing_) n += std::abs(static_cast<double>(k));
  return n;
}

std::int64_t Space::pair(const Winding& winding) const {
  std::int64_t total = 0;
  for (std::size_t i = 0; i < pairing_.size(); ++i) total += pairing_[i] * winding[i];
  return total;
}

void Space::validate(const BasePoint& p) const {
  if (!std::isfinite(p.u) || p.u < 0.0 || p.u >= 1.0) {
    throw DomainError(fmt::format("first angle {} outside [0,1)", p.u));
  }
  switch (kind_) {
    case SpaceKind::Circle:
      break;
    case SpaceKind::Annulus:
      if (!(p.v >= 0.0 && p.v <= 1.0)) {
        throw DomainError(fmt::format("annulus radius {} outside [0,1]", p.v));
      }
      break;
    case SpaceKind::Torus2:
      if (!std::isfinite(p.v) || p.v < 0.0 || p.v >= 1.0) {
        throw DomainError(fmt::format("second angle {} outside [0,1)", p.v));
      }
      break;
    case SpaceKind::CircleTimesCompactifiedLine:
      if (std::isnan(p.v) || p.v == -kInfinity) {
        throw DomainError("line coordinate must be a real number or +inf");
      }
      break;
  }
}

BasePoint Space::wrap(BasePoint p) const {
  p.u = wrap_unit(p.u);
  if (kind_ == SpaceKind::Torus2) p.v = wrap_unit(p.v);
  if (kind_ == SpaceKind::CircleTimesCompactifiedLine && std::isinf(p.v)) p.v = kInfinity;
  if (kind_ == SpaceKind::Circle) p.v = 0.0;
  return p;
}

LiftPoint Space::canonical_lift(const BasePoint& p) const { return {p.u, p.v, 0}; }

BasePoint Space::project(const LiftPoint& p) const {
  BasePoint b{wrap_unit(p.u), p.v};
  if (kind_ == SpaceKind::Torus2) b.v = wrap_unit(p.v);
  if (kind_ == SpaceKind::CircleTimesCompactifiedLine && std::isinf(b.v)) b.v = kInfinity;
  if (kind_ == SpaceKind::Circle) b.v = 0.0;
  return b;
}

std::array<double, 2> Space::angles(const LiftPoint& p) const {
  switch (kind_) {
    case SpaceKind::Circle:
    case SpaceKind::Annulus:
      return {p.u, 0.0};
    case SpaceKind::Torus2:
      return {p.u, p.v};
    case SpaceKind::CircleTimesCompactifiedLine:
      return {p.u, static_cast<double>(p.v_turns) + line_angle(p.v)};
  }
  return {p.u, 0.0};
}

LiftPoint Space::deck(LiftPoint p, const Winding& k) const {
  p.u += static_cast<double>(k[0]);
  if (kind_ == SpaceKind::Torus2) p.v += static_cast<double>(k[1]);
  if (kind_ == SpaceKind::CircleTimesCompactifiedLine) p.v_turns += k[1];
  return p;
}

double Space::potential(const LiftPoint& p) const {
  const auto a = angles(p);
  double f = static_cast<double>(pairing_[0]) * a[0];
  if (pairing_.size() > 1 && pairing_[1] != 0) f += static_cast<double>(pairing_[1]) * a[1];
  return f;
}

CoverPoint Space::to_cover(const LiftPoint& p) const {
  const BasePoint base = project(p);
  return {base, potential(p) - potential(base)};
}

double Space::distance(const BasePoint& a, const BasePoint& b) const {
  const double du = circular_gap(a.u, b.u);
  switch (kind_) {
    case SpaceKind::Circle:
      return du;
    case SpaceKind::Annulus:
      return std::max(du, std::abs(a.v - b.v));
    case SpaceKind::Torus2:
      return std::max(du, circular_gap(a.v, b.v));
    case SpaceKind::CircleTimesCompactifiedLine:
      return std::max(du, circular_gap(line_angle(a.v), line_angle(b.v)));
  }
  return du;
}

std::size_t Space::grid_axis(std::size_t resolution) {
  return std::bit_ceil(std::max<std::size_t>(resolution, 1));
}

double Space::grid_mesh(std::size_t per_axis) {
  return 0.5 / static_cast<double>(grid_axis(per_axis));
}

std::vector<BasePoint> Space::grid(std::size_t per_axis) const {
  const std::size_t m = grid_axis(per_axis);
  const double step = 1.0 / static_cast<double>(m);
  std::vector<BasePoint> points;
  switch (kind_) {
    case SpaceKind::Circle:
      points.reserve(m);
      for (std::size_t i = 0; i < m; ++i) points.push_back({step * i, 0.0});
      break;
    case SpaceKind::Annulus:
      points.reserve(m * (m + 1));
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j <= m; ++j) points.push_back({step * i, step * j});
      }
      break;
    case SpaceKind::Torus2:
      points.reserve(m * m);
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) points.push_back({step * i, step * j});
      }
      break;
    case SpaceKind::CircleTimesCompactifiedLine:
      // Chart y = x / (1 + |x|) on (-1,1); y = -1 stands for infinity.
      points.reserve(m * m);
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          if (j == 0) {
            points.push_back({step * i, kInfinity});
            continue;
          }
          const double y = -1.0 + 2.0 * step * static_cast<double>(j);
          points.push_back({step * i, y / (1.0 - std::abs(y))});
        }
      }
      break;
  }
  return points;
}

BasePoint Space::random_point(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  BasePoint p{unit(rng), 0.0};
  switch (kind_) {
    case SpaceKind::Circle:
      break;
    case SpaceKind::Annulus:
    case SpaceKind::Torus2:
      p.v = unit(rng);
      break;
    case SpaceKind::CircleTimesCompactifiedLine: {
      if (std::uniform_int_distribution<int>(0, 15)(rng) == 0) {
        p.v = kInfinity;
      } else {
        const double y = 2.0 * unit(rng) - 1.0;
        p.v = y / (1.0 - std::abs(y));
      }
      break;
    }
  }
  return p;
}

std::string Space::describe() const {
  std::string out(to_string(kind_));
  out += " pairing=(";
  for (std::size_t i = 0; i < pairing_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(pairing_[i]);
  }
  return out + ")";
}

bool Path::is_loop(const Space& space) const { return space.distance(start, end()) < 1e-12; }

Path straight_path(const BasePoint& from, const BasePoint& to) { return {from, {{to, {0, 0}}}}; }

Path basis_loop(const Space& space, std::size_t i) {
  if (i >= space.basis_size()) throw PreconditionError("basis index out of range");
  Winding w{0, 0};
  w[i] = 1;
  return {space.basepoint(), {{space.basepoint(), w}}};
}

std::vector<LiftPoint> lift_path(const Space& space, const Path& path, const LiftPoint& start) {
  space.validate(path.start);
  std::vector<LiftPoint> vertices;
  vertices.reserve(path.segments.size() + 1);
  vertices.push_back(start);
  BasePoint from = path.start;
  for (const auto& seg : path.segments) {
    space.validate(seg.to);
    if (!space.second_is_angular() && seg.winding[1] != 0) {
      throw DomainError("winding around a non-angular coordinate");
    }
    LiftPoint next = vertices.back();
    next.u += (seg.to.u - from.u) + static_cast<double>(seg.winding[0]);
    switch (space.kind()) {
      case SpaceKind::Circle:
        next.v = 0.0;
        break;
      case SpaceKind::Annulus:
        next.v = seg.to.v;
        break;
      case SpaceKind::Torus2:
        next.v += (seg.to.v - from.v) + static_cast<double>(seg.winding[1]);
        break;
      case SpaceKind::CircleTimesCompactifiedLine:
        next.v = seg.to.v;
        next.v_turns += seg.winding[1];
        break;
    }
    vertices.push_back(next);
    from = seg.to;
  }
  return vertices;
}

LiftPoint interpolate(const Space& space, const LiftPoint& a, const LiftPoint& b, double s) {
  LiftPoint p;
  p.u = a.u + s * (b.u - a.u);
  if (space.kind() == SpaceKind::CircleTimesCompactifiedLine) {
    const double ta = static_cast<double>(a.v_turns) + line_angle(a.v);
    const double tb = static_cast<double>(b.v_turns) + line_angle(b.v);
    const double t = ta + s * (tb - ta);
    const double turns = std::floor(t);
    p.v_turns = static_cast<std::int64_t>(turns);
    p.v = line_from_angle(t - turns);
  } else {
    p.v = a.v + s * (b.v - a.v);
  }
  return p;
}

std::vector<LiftPoint> sample_lifted_path(const Space& space, const Path& path,
                                          const LiftPoint& start, std::size_t per_segment) {
  const auto vertices = lift_path(space, path, start);
  std::vector<LiftPoint> out;
  out.push_back(vertices.front());
  per_segment = std::max<std::size_t>(per_segment, 1);
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    for (std::size_t j = 1; j < per_segment; ++j) {
      out.push_back(interpolate(space, vertices[i], vertices[i + 1],
                                static_cast<double>(j) / static_cast<double>(per_segment)));
    }
    out.push_back(vertices[i + 1]);
  }
  return out;
}

Potential::Potential(Space space, Function eval, PotentialSource source, double modulus)
    : space_(std::move(space)), eval_(std::move(eval)), source_(source), modulus_(modulus) {}

Potential Potential::built_in(const Space& space) {
  return {space,
          [space](const CoverPoint& p) { return space.potential(p.base) + p.sheet; },
          PotentialSource::BuiltIn, space.pairing_norm()};
}

PathIntegralCocycle::PathIntegralCocycle(Space space, Function integrate, double modulus,
                                         std::string description)
    : space_(std::move(space)),
      integrate_(std::move(integrate)),
      modulus_(modulus),
      description_(std::move(description)) {}

PathIntegralCocycle PathIntegralCocycle::standard(const Space& space) {
  return linear(space, space.pairing());
}

PathIntegralCocycle PathIntegralCocycle::linear(const Space& space,
                                                std::vector<std::int64_t> weights,
                                                std::function<double(const BasePoint&)> exact_part,
                                                double f_lipschitz) {
  if (weights.size() != space.basis_size()) {
    throw PreconditionError("cocycle weights do not match the basis of H_1");
  }
  double modulus = f_lipschitz;
  for (auto w : weights) modulus += std::abs(static_cast<double>(w));
  std::string description = "linear(";
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (i) description += ",";
    description += std::to_string(weights[i]);
  }
  description += exact_part ? ")+df" : ")";

  auto integrate = [space, weights = std::move(weights),
                    f = std::move(exact_part)](const Path& path) {
    const auto vertices = lift_path(space, path, space.canonical_lift(path.start));
    const auto a0 = space.angles(vertices.front());
    const auto a1 = space.angles(vertices.back());
    double total = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      total += static_cast<double>(weights[i]) * (a1[i] - a0[i]);
    }
    if (f) total += f(path.end()) - f(path.start);
    return total;
  };
  return {space, std::move(integrate), modulus, std::move(description)};
}

Potential potential_from_cocycle(const Space& space, const PathIntegralCocycle& c,
                                 const CoverPoint& basepoint) {
  for (std::size_t i = 0; i < space.basis_size(); ++i) {
    const double loop = c.integrate(basis_loop(space, i));
    const auto expected = static_cast<double>(space.pairing()[i]);
    if (std::abs(loop - expected) > kIntegerTolerance) {
      throw ClassMismatchError(fmt::format(
          "cocycle integrates basis loop {} to {}, class pairing is {}", i, loop, expected));
    }
  }
  const BasePoint origin = space.basepoint();
  const double offset = c.integrate(straight_path(origin, basepoint.base));
  auto eval = [c, origin, offset, sheet0 = basepoint.sheet](const CoverPoint& p) {
    return (p.sheet - sheet0) + c.integrate(straight_path(origin, p.base)) - offset;
  };
  return {space, std::move(eval), PotentialSource::FromCocycle, c.modulus()};
}

PathIntegralCocycle cocycle_from_potential(const Space& space, const Potential& p) {
  auto integrate = [space, p](const Path& path) {
    const auto vertices = lift_path(space, path, space.canonical_lift(path.start));
    const CoverPoint start{path.start, 0.0};
    return p(space.to_cover(vertices.back())) - p(start);
  };
  return {space, std::move(integrate), p.modulus(), "from-potential"};
}

double verify_equivariance(const Potential& p, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> height(-3.0, 3.0);
  std::uniform_int_distribution<int> shift(-3, 3);
  double worst = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const BasePoint base = p.space().random_point(rng);
    const double h = height(rng);
    const int k = shift(rng);
    const double r = p({base, h + k}) - p({base, h}) - k;
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

}  // namespace undistort
