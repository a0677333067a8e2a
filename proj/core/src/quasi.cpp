#include "undistort/quasi.hpp"

#include <algorithm>
#include <cmath>

#include "undistort/cocycle.hpp"
#include "undistort/errors.hpp"
#include "undistort/format.hpp"

namespace undistort {

double q_value(const BasePoint& x, const BasePoint& y, const Homeo& g, std::int64_t n) {
  if (n == 0) return 0.0;
  if (g.closed_powers()) {
    const Homeo gn = g.power(n);
    return k_eval(gn, y) - k_eval(gn, x);
  }
  return orbit_displacement(y, g, n) - orbit_displacement(x, g, n);
}

namespace {

// q(g^k) for k = 0..|n| in the direction of sign(n).
std::vector<double> q_run(const BasePoint& x, const BasePoint& y, const Homeo& g, std::int64_t n) {
  if (g.closed_powers()) {
    const auto count = static_cast<std::size_t>(n < 0 ? -n : n);
    const std::int64_t sign = n < 0 ? -1 : 1;
    std::vector<double> out(count + 1, 0.0);
    for (std::size_t k = 1; k <= count; ++k) {
      out[k] = q_value(x, y, g, sign * static_cast<std::int64_t>(k));
    }
    return out;
  }
  auto dx = orbit_displacements(x, g, n);
  const auto dy = orbit_displacements(y, g, n);
  for (std::size_t k = 0; k < dx.size(); ++k) dx[k] = dy[k] - dx[k];
  return dx;
}

double table_sup(const BasePoint& x, const Homeo& g, std::int64_t n, bool forward_only = false) {
  double sup = 0.0;
  for (const auto& [mn, value] : g_table(x, g, n, forward_only)) sup = std::max(sup, std::abs(value));
  return sup;
}

}  // namespace

DefectEstimate defect_estimate(const BasePoint& x, const BasePoint& y, const Homeo& g,
                               std::int64_t n) {
  if (n < 1) throw PreconditionError("defect estimate needs N >= 1");
  const bool forward_only = !invertible(g);
  const auto fwd = q_run(x, y, g, 2 * n);
  const auto bwd = forward_only ? std::vector<double>{} : q_run(x, y, g, -2 * n);
  auto q = [&](std::int64_t k) {
    return k >= 0 ? fwd[static_cast<std::size_t>(k)] : bwd[static_cast<std::size_t>(-k)];
  };
  DefectEstimate out;
  out.n = n;
  out.forward_only = forward_only;
  const std::int64_t lo = forward_only ? 0 : -n;
  for (std::int64_t m = lo; m <= n; ++m) {
    for (std::int64_t k = lo; k <= n; ++k) {
      out.sampled = std::max(out.sampled, std::abs(q(m) - q(m + k) + q(k)));
    }
  }
  out.sup_gx = table_sup(x, g, n, forward_only);
  out.sup_gy = table_sup(y, g, n, forward_only);
  return out;
}

Homogenisation homogenise(const std::vector<double>& values) {
  if (values.size() < 2) throw PreconditionError("homogenisation needs q(g^1)");
  std::vector<std::pair<std::int64_t, double>> samples;
  for (std::size_t k = 0; k < values.size(); ++k) {
    samples.emplace_back(static_cast<std::int64_t>(k), values[k]);
  }
  return homogenise(samples);
}

Homogenisation homogenise(const std::vector<std::pair<std::int64_t, double>>& samples) {
  if (samples.empty()) throw PreconditionError("homogenisation needs samples");
  const auto [n_top, q_top] = samples.back();
  if (n_top < 1) throw PreconditionError("homogenisation needs a positive budget");
  const std::int64_t n_half = n_top / 2;
  double q_half = 0.0;
  bool found = n_half == 0;
  for (const auto& [n, q] : samples) {
    if (n == n_half) {
      q_half = q;
      found = true;
    }
  }
  if (!found) throw PreconditionError("homogenisation samples must contain N/2");
  Homogenisation out;
  out.n_used = n_top;
  out.value = (q_top - q_half) / static_cast<double>(n_top - n_half);
  out.quotient = q_top / static_cast<double>(n_top);
  for (const auto& [n, q] : samples) {
    if (n < n_half) continue;
    out.residual_band = std::max(
        out.residual_band, std::abs(q - q_top - out.value * static_cast<double>(n - n_top)));
  }
  return out;
}

Quasimorphism::Quasimorphism(BasePoint x, BasePoint y, Homeo g, std::int64_t n,
                             std::int64_t defect_n)
    : x_(x), y_(y), g_(std::move(g)), n_(n) {
  if (n_ < 1) throw PreconditionError("quasimorphism budget must be positive");
  const std::int64_t dn = defect_n > 0 ? defect_n : std::min<std::int64_t>(n_, 64);
  table_n_ = 2 * dn;
  defect_ = defect_estimate(x_, y_, g_, dn);
  forward_ = q_run(x_, y_, g_, table_n_);
  if (!defect_.forward_only) backward_ = q_run(x_, y_, g_, -table_n_);
  const auto ns = budget_exponents(g_, n_);
  const auto dx = displacements_at(x_, g_, ns);
  const auto dy = displacements_at(y_, g_, ns);
  std::vector<std::pair<std::int64_t, double>> samples(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) samples[i] = {ns[i], dy[i] - dx[i]};
  hom_ = homogenise(samples);
}

double Quasimorphism::value(std::int64_t n) const {
  if (n >= 0 && n <= table_n_) return forward_[static_cast<std::size_t>(n)];
  if (n < 0 && -n <= table_n_ && !backward_.empty()) return backward_[static_cast<std::size_t>(-n)];
  return q_value(x_, y_, g_, n);
}

double circular_gap(double a, double b) {
  const double d = a - b;
  return std::abs(d - std::round(d));
}

Certificate certify_two_rotation_points(const BasePoint& x, const BasePoint& y, const Homeo& g,
                                        std::int64_t budget, std::optional<double> c,
                                        std::int64_t diagnostic_n) {
  Certificate cert;
  cert.mechanism = Mechanism::TwoRotationPoints;
  cert.c = c;
  const SpaceKind kind = g.space().kind();
  cert.add("map", g.describe());
  cert.add("x", format_point(x, kind));
  cert.add("y", format_point(y, kind));
  cert.add("budget", std::to_string(budget));

  const RotationEstimate rx = local_rotation_number(x, g, budget, diagnostic_n);
  const RotationEstimate ry = local_rotation_number(y, g, budget, diagnostic_n);
  const RotationEstimate rx2 = local_rotation_number(x, g, 2 * budget, diagnostic_n);
  const RotationEstimate ry2 = local_rotation_number(y, g, 2 * budget, diagnostic_n);
  const double gap = circular_gap(rx.rot, ry.rot);
  const double gap2 = circular_gap(rx2.rot, ry2.rot);
  cert.add("rot_x", format_real(rx.rot));
  cert.add("rot_y", format_real(ry.rot));
  cert.add("verdict_x", std::string(to_string(rx.verdict)));
  cert.add("verdict_y", std::string(to_string(ry.verdict)));
  cert.add("diagnostic_sup_x", format_real(rx.diagnostic.sup));
  cert.add("diagnostic_sup_y", format_real(ry.diagnostic.sup));
  cert.add("rotation_gap", format_real(gap));
  cert.add("rotation_gap_2n", format_real(gap2));
  cert.add("gap_tolerance", format_real(kRotationGapTolerance));

  if (rx.verdict != BoundedVerdict::Bounded || ry.verdict != BoundedVerdict::Bounded) {
    cert.settle(Verdict::Inconclusive, "G is not bounded at both points");
    return cert;
  }
  if (gap <= kRotationGapTolerance || gap2 <= kRotationGapTolerance) {
    cert.settle(Verdict::Inconclusive, "rotation gap below tolerance");
    return cert;
  }
  const Quasimorphism q(x, y, g, budget);
  const auto& h = q.homogenised();
  cert.invariant = std::abs(h.value);
  cert.add("q_hat", format_real(h.value));
  cert.add("q_hat_band", format_real(h.residual_band));
  cert.add("defect_sampled", format_real(q.defect().sampled));
  cert.add("defect_bound", format_real(q.defect_bound()));
  if (c) cert.add("C", format_real(*c));
  if (cert.invariant <= kRotationGapTolerance) {
    cert.settle(Verdict::Inconclusive, "homogenisation vanishes");
    return cert;
  }
  cert.settle(Verdict::Undistorted, "distinct local rotation numbers");
  return cert;
}

Certificate certify_two_fixed_points(const BasePoint& x, const BasePoint& y, const Homeo& g,
                                     const Path& gamma, std::optional<double> c) {
  const Space& s = g.space();
  s.validate(x);
  s.validate(y);
  const double moved_x = s.distance(g(x), x);
  const double moved_y = s.distance(g(y), y);
  if (moved_x > kFixedPointTolerance) {
    throw PreconditionError("x is not fixed: |g(x) - x| = " + format_real(moved_x));
  }
  if (moved_y > kFixedPointTolerance) {
    throw PreconditionError("y is not fixed: |g(y) - y| = " + format_real(moved_y));
  }
  if (s.distance(gamma.start, x) > kFixedPointTolerance ||
      s.distance(gamma.end(), y) > kFixedPointTolerance) {
    throw PreconditionError("path must run from x to y");
  }

  Certificate cert;
  cert.mechanism = Mechanism::TwoFixedPoints;
  cert.c = c;
  cert.add("map", g.describe());
  cert.add("x", format_point(x, s.kind()));
  cert.add("y", format_point(y, s.kind()));
  cert.add("fixed_residual", format_real(std::max(moved_x, moved_y)));

  // <a, g gamma - gamma> = K(g)(end of lifted gamma) - K(g)(start).
  const LiftPoint start = s.canonical_lift(gamma.start);
  const LiftPoint end = lift_path(s, gamma, start).back();
  const double raw = g.displacement(end) - g.displacement(start);
  const double pairing = std::round(raw);
  cert.add("pairing_raw", format_real(raw));
  cert.add("pairing", format_real(pairing));
  if (c) cert.add("C", format_real(*c));
  if (std::abs(raw - pairing) > kIntegerTolerance) {
    cert.settle(Verdict::Inconclusive, "pairing is not an integer within tolerance");
    return cert;
  }
  cert.invariant = std::abs(pairing);
  if (pairing == 0.0) {
    cert.settle(Verdict::Inconclusive, "pairing vanishes");
    return cert;
  }
  cert.settle(Verdict::Undistorted, "fixed points with nonzero pairing");
  return cert;
}

}  // namespace undistort
