#include "undistort/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "undistort/cocycle.hpp"
#include "undistort/errors.hpp"
#include "undistort/format.hpp"
#include "undistort/numbers.hpp"

namespace undistort {

namespace {

double unit_gap(double a, double b) {
  const double d = std::abs(a - b);
  const double f = d - std::floor(d);
  return std::min(f, 1.0 - f);
}

double parse_level(std::string_view text, std::string_view name) {
  if (text == "inf" || text == "infinity") return kInfinity;
  try {
    return to_double(parse_rational(text));
  } catch (const std::invalid_argument&) {
    throw DomainError("bad level in circle name '" + std::string(name) + "'");
  }
}

}  // namespace

BasePoint InvariantCircle::at(const Space& space, double s) const {
  if (axis == Axis::FixedV) return {s, space.kind() == SpaceKind::Circle ? 0.0 : level};
  if (space.kind() == SpaceKind::CircleTimesCompactifiedLine) return {level, line_from_angle(s)};
  return {level, s};
}

Winding InvariantCircle::homology() const {
  return axis == Axis::FixedV ? Winding{1, 0} : Winding{0, 1};
}

double InvariantCircle::offset(const Space& space, const BasePoint& p) const {
  if (axis == Axis::FixedU) return unit_gap(p.u, level);
  switch (space.kind()) {
    case SpaceKind::Circle: return 0.0;
    case SpaceKind::Annulus: return std::abs(p.v - level);
    case SpaceKind::Torus2: return unit_gap(p.v, level);
    case SpaceKind::CircleTimesCompactifiedLine:
      return unit_gap(line_angle(p.v), line_angle(level));
  }
  return 0.0;
}

InvariantCircle named_circle(const Space& space, std::string_view name) {
  const SpaceKind kind = space.kind();
  auto reject = [&]() -> InvariantCircle {
    throw DomainError("no circle '" + std::string(name) + "' on " + std::string(to_string(kind)));
  };
  InvariantCircle c;
  c.name = std::string(name);
  if (name == "circle") {
    if (kind != SpaceKind::Circle) return reject();
    return c;
  }
  if (name == "boundary:0" || name == "boundary:1") {
    if (kind != SpaceKind::Annulus) return reject();
    c.level = name.back() == '1' ? 1.0 : 0.0;
    return c;
  }
  if (name == "infinity") {
    if (kind != SpaceKind::CircleTimesCompactifiedLine) return reject();
    c.level = kInfinity;
    return c;
  }
  if (name.rfind("horizontal:", 0) == 0) {
    if (kind == SpaceKind::Circle) return reject();
    c.level = parse_level(name.substr(11), name);
    space.validate({0.0, c.level});
    return c;
  }
  if (name.rfind("vertical:", 0) == 0) {
    if (kind != SpaceKind::Torus2 && kind != SpaceKind::CircleTimesCompactifiedLine) {
      return reject();
    }
    c.axis = InvariantCircle::Axis::FixedU;
    c.level = parse_level(name.substr(9), name);
    space.validate({c.level, 0.0});
    return c;
  }
  return reject();
}

std::string_view to_string(MeasureKind k) {
  switch (k) {
    case MeasureKind::Atomic: return "atomic";
    case MeasureKind::CircleUniformImage: return "circle";
    case MeasureKind::Empirical: return "empirical";
  }
  return "?";
}

Measure Measure::atomic(const Space& space, std::vector<Atom> atoms) {
  if (atoms.empty()) throw PreconditionError("atomic measure needs at least one atom");
  double total = 0.0;
  for (auto& a : atoms) {
    if (!(a.weight >= 0.0)) throw PreconditionError("atom weights must be nonnegative");
    space.validate(a.point);
    a.point = space.wrap(a.point);
    total += a.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw PreconditionError("atom weights sum to " + format_real(total) + ", not 1");
  }
  Measure m(MeasureKind::Atomic, space);
  m.atoms_ = std::move(atoms);
  return m;
}

Measure Measure::circle(const Space& space, InvariantCircle circle, std::size_t quadrature) {
  if (quadrature == 0) throw PreconditionError("circle quadrature needs nodes");
  Measure m(MeasureKind::CircleUniformImage, space);
  m.atoms_.reserve(quadrature);
  const double w = 1.0 / static_cast<double>(quadrature);
  for (std::size_t i = 0; i < quadrature; ++i) {
    m.atoms_.push_back({circle.at(space, (static_cast<double>(i) + 0.5) * w), w});
  }
  m.circle_ = std::move(circle);
  return m;
}

Measure Measure::empirical(const Homeo& g, const BasePoint& x, std::int64_t n) {
  if (n < 1) throw PreconditionError("empirical measure needs N >= 1");
  const Space& s = g.space();
  s.validate(x);
  Measure m(MeasureKind::Empirical, s);
  m.orbit_length_ = n;
  m.atoms_.reserve(static_cast<std::size_t>(n));
  const double w = 1.0 / static_cast<double>(n);
  LiftPoint p = s.canonical_lift(s.wrap(x));
  for (std::int64_t k = 0; k < n; ++k) {
    m.atoms_.push_back({s.project(p), w});
    p = g.lift(p);
  }
  return m;
}

std::string Measure::describe() const {
  switch (kind_) {
    case MeasureKind::Atomic: {
      std::string out = "atomic[";
      for (std::size_t i = 0; i < atoms_.size(); ++i) {
        if (i) out += ";";
        out += format_point(atoms_[i].point, space_.kind()) + "*" + format_real(atoms_[i].weight);
      }
      return out + "]";
    }
    case MeasureKind::CircleUniformImage:
      return "circle[" + circle_->name + "]";
    case MeasureKind::Empirical:
      return "empirical[" + format_point(atoms_.front().point, space_.kind()) + ",N=" +
             std::to_string(orbit_length_) + "]";
  }
  return "?";
}

double invariance_defect(const Measure& mu, const Homeo& g) {
  if (mu.kind() != MeasureKind::Empirical) return 0.0;
  double sup = 0.0;
  for (const auto& a : mu.atoms()) sup = std::max(sup, std::abs(k_eval(g, a.point)));
  return 2.0 * sup / static_cast<double>(mu.orbit_length());
}

double invariance_residual(const Measure& mu, const Homeo& g) {
  const Space& s = mu.space();
  double worst = 0.0;
  switch (mu.kind()) {
    case MeasureKind::Empirical:
      return 0.0;
    case MeasureKind::CircleUniformImage: {
      const auto& atoms = mu.atoms();
      const std::size_t stride = std::max<std::size_t>(1, atoms.size() / 256);
      for (std::size_t i = 0; i < atoms.size(); i += stride) {
        worst = std::max(worst, mu.invariant_circle()->offset(s, g(atoms[i].point)));
      }
      return worst;
    }
    case MeasureKind::Atomic:
      for (const auto& a : mu.atoms()) {
        const BasePoint image = g(a.point);
        double best = kInfinity;
        for (const auto& b : mu.atoms()) {
          if (std::abs(a.weight - b.weight) > 1e-12) continue;
          best = std::min(best, s.distance(image, b.point));
        }
        worst = std::max(worst, best);
      }
      return worst;
  }
  return worst;
}

double integrate_k(const Measure& mu, const Homeo& g, const std::optional<BasePoint>& pin) {
  if (!(mu.space() == g.space())) throw SpaceMismatchError("measure and map live on different spaces");
  double sum = 0.0;
  for (const auto& a : mu.atoms()) sum += a.weight * k_eval(g, a.point);
  return sum - k_eval(g, pin.value_or(g.space().basepoint()));
}

NielsenResult nielsen_gap(const Measure& mu, const Measure& nu, const Homeo& g,
                          const std::optional<BasePoint>& pin) {
  for (const Measure* m : {&mu, &nu}) {
    const double r = invariance_residual(*m, g);
    if (r > kInvarianceTolerance) {
      throw PreconditionError("measure " + m->describe() + " is not invariant (residual " +
                              format_real(r) + ")");
    }
  }
  NielsenResult out;
  out.integral_mu = integrate_k(mu, g, pin);
  out.integral_nu = integrate_k(nu, g, pin);
  out.gap = std::abs(out.integral_mu - out.integral_nu);
  out.tolerance =
      kExactNielsenTolerance + 10.0 * (invariance_defect(mu, g) + invariance_defect(nu, g));
  out.equivalent = out.gap <= out.tolerance;
  return out;
}

Certificate certify_two_measures(const Measure& mu, const Measure& nu, const Homeo& g,
                                 std::optional<double> c) {
  Certificate cert;
  cert.mechanism = Mechanism::TwoMeasures;
  cert.c = c;
  cert.add("map", g.describe());
  cert.add("mu", mu.describe());
  cert.add("nu", nu.describe());
  const NielsenResult n = nielsen_gap(mu, nu, g);
  cert.invariant = n.gap;
  cert.add("integral_mu", format_real(n.integral_mu));
  cert.add("integral_nu", format_real(n.integral_nu));
  cert.add("gap", format_real(n.gap));
  cert.add("tolerance", format_real(n.tolerance));
  if (c) cert.add("C", format_real(*c));
  if (n.equivalent) {
    cert.settle(Verdict::Inconclusive, "measures are Nielsen equivalent within tolerance");
  } else {
    cert.settle(Verdict::Undistorted, "Nielsen nonequivalent invariant measures");
  }
  return cert;
}

SccResult scc_rotation_integral(const InvariantCircle& circle, const Homeo& g,
                                std::int64_t budget) {
  if (budget < 1) throw PreconditionError("rotation budget must be positive");
  const Space& s = g.space();
  for (int i = 0; i < 64; ++i) {
    const BasePoint p = circle.at(s, (i + 0.5) / 64.0);
    const double off = circle.offset(s, g(p));
    if (off > kInvarianceTolerance) {
      throw PreconditionError("circle " + circle.name + " is not invariant (offset " +
                              format_real(off) + ")");
    }
  }
  const std::size_t axis = circle.axis == InvariantCircle::Axis::FixedV ? 0 : 1;
  const LiftPoint start = s.canonical_lift(circle.at(s, 0.0));
  LiftPoint end = start;
  SccResult out;
  out.n_used = budget;
  if (g.closed_powers()) {
    end = g.power(budget).lift(start);
  } else {
    for (std::int64_t k = 0; k < budget; ++k) end = g.lift(end);
    out.error = 1.0 / static_cast<double>(budget);
  }
  out.rotation = (s.angles(end)[axis] - s.angles(start)[axis]) / static_cast<double>(budget);
  out.pairing = s.pair(circle.homology());
  out.value = out.rotation * static_cast<double>(out.pairing);
  return out;
}

std::pair<std::int64_t, std::int64_t> best_fraction(double x, std::int64_t max_den) {
  // Convergents h/k of the continued fraction of x.
  std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double rest = x;
  for (int i = 0; i < 64; ++i) {
    const double a_real = std::floor(rest);
    if (std::abs(a_real) > 1e15) break;
    const auto a = static_cast<std::int64_t>(a_real);
    const std::int64_t h2 = a * h1 + h0;
    const std::int64_t k2 = a * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    const double f = rest - a_real;
    if (f < 1e-15) break;
    rest = 1.0 / f;
  }
  return {h1, k1};
}

RationalityReport rationality_check(double rho1, std::int64_t pairing1, double rho2,
                                    std::int64_t pairing2) {
  if (pairing1 == 0 || pairing2 == 0) {
    throw PreconditionError("rationality check needs nonzero pairings");
  }
  RationalityReport out;
  for (std::int64_t k1 = 1; k1 <= kRelationBound && !out.relation; ++k1) {
    for (std::int64_t k2 : {std::int64_t{1}, std::int64_t{-1}}) {
      for (std::int64_t m = 1; m <= kRelationBound; ++m) {
        const std::int64_t kk = k2 * m;
        const double d = static_cast<double>(k1) * rho1 - static_cast<double>(kk) * rho2;
        if (std::abs(d - std::round(d)) <= kRelationTolerance) {
          out.relation = std::pair{k1, kk};
          break;
        }
      }
      if (out.relation) break;
    }
  }
  auto reconstruct = [](double rho) -> std::optional<std::pair<std::int64_t, std::int64_t>> {
    const double f = rho - std::floor(rho);
    const auto pq = best_fraction(f, kRelationBound);
    if (pq.second > 0 &&
        std::abs(f - static_cast<double>(pq.first) / static_cast<double>(pq.second)) <=
            kRelationTolerance) {
      return pq;
    }
    return std::nullopt;
  };
  out.rho1_fraction = reconstruct(rho1);
  out.rho2_fraction = reconstruct(rho2);
  if (out.relation) {
    out.message = "k1=" + std::to_string(out.relation->first) +
                  " k2=" + std::to_string(out.relation->second);
  } else {
    out.message = "no relation found at this precision";
  }
  return out;
}

}  // namespace undistort
