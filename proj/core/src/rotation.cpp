#include "undistort/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "undistort/cocycle.hpp"
#include "undistort/errors.hpp"
#include "undistort/parallel.hpp"

namespace undistort {

std::string_view to_string(BoundedVerdict v) {
  switch (v) {
    case BoundedVerdict::Bounded: return "bounded";
    case BoundedVerdict::UnboundedSuspected: return "unbounded-suspected";
    case BoundedVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

double orbit_displacement(const BasePoint& x, const Homeo& g, std::int64_t n) {
  if (n == 0) return 0.0;
  if (g.closed_powers()) return g.power(n).displacement(g.space().canonical_lift(x));
  return orbit_displacements(x, g, n).back();
}

std::vector<double> orbit_displacements(const BasePoint& x, const Homeo& g, std::int64_t n) {
  const Space& s = g.space();
  const LiftPoint start = s.canonical_lift(x);
  const auto count = static_cast<std::size_t>(n < 0 ? -n : n);
  std::vector<double> out(count + 1, 0.0);
  if (g.closed_powers()) {
    const std::int64_t sign = n < 0 ? -1 : 1;
    for (std::size_t k = 1; k <= count; ++k) {
      out[k] = g.power(sign * static_cast<std::int64_t>(k)).displacement(start);
    }
    return out;
  }
  const Homeo step = n < 0 ? g.inverse() : g;
  const double f0 = s.potential(start);
  LiftPoint p = start;
  for (std::size_t k = 1; k <= count; ++k) {
    p = step.lift(p);
    out[k] = s.potential(p) - f0;
  }
  return out;
}

double b_value(const BasePoint& x, const Homeo& g, std::int64_t n) {
  return -orbit_displacement(x, g, n);
}

std::vector<std::int64_t> budget_exponents(const Homeo& g, std::int64_t budget) {
  std::vector<std::int64_t> ns;
  const std::int64_t lo = std::max<std::int64_t>(1, budget / 2);
  if (!g.closed_powers()) {
    for (std::int64_t n = 1; n <= budget; ++n) ns.push_back(n);
    return ns;
  }
  constexpr std::int64_t kDense = 1024;
  for (std::int64_t n = 1; n <= std::min(budget, kDense); ++n) ns.push_back(n);
  const std::int64_t span = budget - lo;
  const std::int64_t steps = std::min<std::int64_t>(span, kDense);
  for (std::int64_t i = 0; i <= steps; ++i) ns.push_back(steps == 0 ? lo : lo + span * i / steps);
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  return ns;
}

std::vector<double> displacements_at(const BasePoint& x, const Homeo& g,
                                     const std::vector<std::int64_t>& exponents) {
  std::vector<double> out(exponents.size());
  if (exponents.empty()) return out;
  if (g.closed_powers()) {
    const LiftPoint start = g.space().canonical_lift(x);
    parallel_for(
        exponents.size(),
        [&](std::size_t i) { out[i] = g.power(exponents[i]).displacement(start); }, 64);
    return out;
  }
  const auto d = orbit_displacements(x, g, exponents.back());
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    out[i] = d[static_cast<std::size_t>(exponents[i])];
  }
  return out;
}

namespace {

// D_k for k in [-2n, 2n], stored at index k + 2n. Negative k are NaN when
// forward_only.
std::vector<double> symmetric_displacements(const BasePoint& x, const Homeo& g, std::int64_t n,
                                            bool forward_only) {
  const auto fwd = orbit_displacements(x, g, 2 * n);
  std::vector<double> bwd;
  if (!forward_only) bwd = orbit_displacements(x, g, -2 * n);
  std::vector<double> out(static_cast<std::size_t>(4 * n + 1),
                          std::numeric_limits<double>::quiet_NaN());
  for (std::int64_t k = -2 * n; k <= 2 * n; ++k) {
    if (k < 0 && forward_only) continue;
    out[static_cast<std::size_t>(k + 2 * n)] =
        k >= 0 ? fwd[static_cast<std::size_t>(k)] : bwd[static_cast<std::size_t>(-k)];
  }
  return out;
}

}  // namespace

bool invertible(const Homeo& g) {
  if (g.flavor() != Flavor::NumericSampled) return true;
  try {
    g.inverse();
    return true;
  } catch (const UnsupportedFlavorError&) {
    return false;
  }
}

std::map<std::pair<std::int64_t, std::int64_t>, double> g_table(const BasePoint& x, const Homeo& g,
                                                               std::int64_t n_max,
                                                               bool forward_only) {
  std::map<std::pair<std::int64_t, std::int64_t>, double> table;
  const std::int64_t lo = forward_only ? 0 : -n_max;
  if (g.closed_powers()) {
    std::vector<Homeo> powers;
    powers.reserve(static_cast<std::size_t>(2 * n_max + 1));
    for (std::int64_t k = -n_max; k <= n_max; ++k) powers.push_back(g.power(k));
    auto pw = [&](std::int64_t k) -> const Homeo& {
      return powers[static_cast<std::size_t>(k + n_max)];
    };
    for (std::int64_t m = lo; m <= n_max; ++m) {
      for (std::int64_t n = lo; n <= n_max; ++n) table[{m, n}] = g_cocycle(x, pw(m), pw(n));
    }
    return table;
  }
  const auto d = symmetric_displacements(x, g, n_max, forward_only);
  auto at = [&](std::int64_t k) { return d[static_cast<std::size_t>(k + 2 * n_max)]; };
  for (std::int64_t m = lo; m <= n_max; ++m) {
    for (std::int64_t n = lo; n <= n_max; ++n) table[{m, n}] = at(m + n) - at(n) - at(m);
  }
  return table;
}

BoundednessDiagnostic boundedness_diagnostic(const BasePoint& x, const Homeo& g, std::int64_t n) {
  if (n < 1) throw PreconditionError("boundedness diagnostic needs N >= 1");
  BoundednessDiagnostic out;
  out.n = n;
  out.forward_only = !invertible(g);
  const auto table = g_table(x, g, n, out.forward_only);
  const auto d = symmetric_displacements(x, g, n, out.forward_only);
  auto b = [&](std::int64_t k) { return -d[static_cast<std::size_t>(k + 2 * n)]; };

  out.running_sup.assign(static_cast<std::size_t>(n + 1), 0.0);
  for (const auto& [mn, value] : table) {
    const auto [m, k] = mn;
    const auto level = static_cast<std::size_t>(std::max(std::abs(m), std::abs(k)));
    out.running_sup[level] = std::max(out.running_sup[level], std::abs(value));
    out.coboundary_residual =
        std::max(out.coboundary_residual, std::abs(value - (b(k) - b(m + k) + b(m))));
  }
  for (std::size_t k = 1; k < out.running_sup.size(); ++k) {
    out.running_sup[k] = std::max(out.running_sup[k], out.running_sup[k - 1]);
  }
  out.sup = out.running_sup.back();
  const double half = out.running_sup[static_cast<std::size_t>(n / 2)];
  out.growth_per_doubling = out.sup - half;
  out.growth_exponent = half > 0.0 ? std::log2(out.sup / half) : 0.0;
  if (out.growth_per_doubling <= kBoundedTolerance) {
    out.verdict = BoundedVerdict::Bounded;
  } else if (out.growth_per_doubling > kGrowthThreshold) {
    out.verdict = BoundedVerdict::UnboundedSuspected;
  } else {
    out.verdict = BoundedVerdict::Inconclusive;
  }
  return out;
}

std::int64_t default_budget(const Homeo& g) {
  return g.closed_powers() ? kDefaultClosedBudget : kDefaultNumericBudget;
}

RotationEstimate local_rotation_number(const BasePoint& x, const Homeo& g, std::int64_t budget,
                                       std::int64_t diagnostic_n) {
  if (budget < 1) throw PreconditionError("rotation budget must be positive");
  RotationEstimate out;
  out.n_used = budget;
  const std::int64_t lo = std::max<std::int64_t>(1, budget / 2);

  const auto ns = budget_exponents(g, budget);
  const auto d = displacements_at(x, g, ns);
  std::vector<std::pair<std::int64_t, double>> samples(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) samples[i] = {ns[i], -d[i]};
  out.evaluations = samples.size();

  // Summing offsets from the top quotient keeps the mean exact for rotations.
  const double ref = samples.back().second / static_cast<double>(samples.back().first);
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& [n, b] : samples) {
    if (n < lo) continue;
    sum += b / static_cast<double>(n) - ref;
    ++count;
  }
  out.r = ref + sum / static_cast<double>(count);
  out.rot = out.r - std::floor(out.r);
  const double neg = -out.r;
  out.classical = neg - std::floor(neg);
  for (const auto& [n, b] : samples) {
    out.residual_band = std::max(out.residual_band, std::abs(b - out.r * static_cast<double>(n)));
  }

  const std::int64_t dn =
      diagnostic_n > 0 ? diagnostic_n : std::min(budget, kDefaultDiagnosticBudget);
  out.diagnostic = boundedness_diagnostic(x, g, dn);
  out.verdict = out.diagnostic.verdict;
  return out;
}

}  // namespace undistort
