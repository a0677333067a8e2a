#pragma once

#include <cstdint>
#include <map>
#include <string_view>
#include <vector>

#include "undistort/homeo.hpp"

namespace undistort {

// D_n = F(g~^n x~) - F(x~) for the canonical lift x~ of x. Closed-power
// families evaluate g^n directly; other maps are iterated (negative n needs an
// invertible map).
double orbit_displacement(const BasePoint& x, const Homeo& g, std::int64_t n);

// D_0, ..., D_n along one orbit (index k holds D_{sign*k}).
std::vector<double> orbit_displacements(const BasePoint& x, const Homeo& g, std::int64_t n);

// Exponents at which budget-N estimates evaluate the orbit: every n <= N for
// iterated maps; a dense prefix plus an even subsample of [N/2, N] for
// closed-power families. Sorted, always contains N/2 and N.
std::vector<std::int64_t> budget_exponents(const Homeo& g, std::int64_t budget);
// D_n at each (positive, sorted) exponent.
std::vector<double> displacements_at(const BasePoint& x, const Homeo& g,
                                     const std::vector<std::int64_t>& exponents);

// b_x(g^n) = -D_n.
double b_value(const BasePoint& x, const Homeo& g, std::int64_t n);

enum class BoundedVerdict : std::uint8_t { Bounded, UnboundedSuspected, Inconclusive };
std::string_view to_string(BoundedVerdict v);

struct BoundednessDiagnostic {
  std::int64_t n = 0;
  // running_sup[k] = max |G_x(g^i, g^j)| over |i|,|j| <= k, k = 0..n.
  std::vector<double> running_sup;
  double sup = 0.0;
  // S(n) - S(n/2).
  double growth_per_doubling = 0.0;
  // log2(S(n) / S(n/2)); 0 when S(n/2) vanishes.
  double growth_exponent = 0.0;
  // Max coboundary residual |G(m,n) - (b(n) - b(m+n) + b(m))| over the table.
  double coboundary_residual = 0.0;
  // Maps without an inverse only tabulate m, n >= 0.
  bool forward_only = false;
  BoundedVerdict verdict = BoundedVerdict::Inconclusive;
};

inline constexpr double kBoundedTolerance = 1e-9;
inline constexpr double kGrowthThreshold = 0.1;

// Table of G_x(g^m, g^n) over |m|,|n| <= n_max, or 0 <= m,n <= n_max when
// forward_only.
std::map<std::pair<std::int64_t, std::int64_t>, double> g_table(const BasePoint& x, const Homeo& g,
                                                               std::int64_t n_max,
                                                               bool forward_only = false);
// False for maps whose inverse is unavailable.
bool invertible(const Homeo& g);

BoundednessDiagnostic boundedness_diagnostic(const BasePoint& x, const Homeo& g, std::int64_t n);

struct RotationEstimate {
  double r = 0.0;          // Cesaro mean of b_n / n over n in [N/2, N]
  double rot = 0.0;        // frac(r)
  double classical = 0.0;  // frac(-r), the usual lift rotation number
  std::int64_t n_used = 0;
  std::size_t evaluations = 0;
  // max |b_n - r n| over the evaluated n.
  double residual_band = 0.0;
  BoundednessDiagnostic diagnostic;
  BoundedVerdict verdict = BoundedVerdict::Inconclusive;
};

inline constexpr std::int64_t kDefaultNumericBudget = std::int64_t{1} << 14;
inline constexpr std::int64_t kDefaultClosedBudget = 1'000'000;
inline constexpr std::int64_t kDefaultDiagnosticBudget = 64;

std::int64_t default_budget(const Homeo& g);

// diagnostic_n <= 0 selects min(budget, 64).
RotationEstimate local_rotation_number(const BasePoint& x, const Homeo& g, std::int64_t budget,
                                       std::int64_t diagnostic_n = 0);

}  // namespace undistort
