#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "undistort/certificate.hpp"
#include "undistort/homeo.hpp"
#include "undistort/rotation.hpp"

namespace undistort {

// q(g^n) = K(g^n)(y) - K(g^n)(x).
double q_value(const BasePoint& x, const BasePoint& y, const Homeo& g, std::int64_t n);

struct DefectEstimate {
  std::int64_t n = 0;
  // max |q(g^m) - q(g^{m+n}) + q(g^n)| over |m|,|n| <= N.
  double sampled = 0.0;
  double sup_gx = 0.0;
  double sup_gy = 0.0;
  // Maps without an inverse restrict the tables to m, n >= 0.
  bool forward_only = false;
  double bound() const { return sup_gx + sup_gy; }
  bool holds(double tolerance = 1e-9) const { return sampled <= bound() + tolerance; }
};

DefectEstimate defect_estimate(const BasePoint& x, const BasePoint& y, const Homeo& g,
                               std::int64_t n);

struct Homogenisation {
  // (q(N) - q(N/2)) / (N - N/2).
  double value = 0.0;
  // q(N) / N, the plain quotient.
  double quotient = 0.0;
  // max over n in [N/2, N] of |q(n) - q(N) - value (n - N)|.
  double residual_band = 0.0;
  std::int64_t n_used = 0;
};

// values[k] = q(g^k) for k = 0..N.
Homogenisation homogenise(const std::vector<double>& values);
// (n, q(g^n)) pairs sorted by n; the last n is the budget N and N/2 must occur.
Homogenisation homogenise(const std::vector<std::pair<std::int64_t, double>>& samples);

class Quasimorphism {
 public:
  // Homogenises over budget N and tabulates q(g^n) for |n| <= 2 defect_n
  // (forward only for maps without an inverse) for the defect. defect_n <= 0
  // selects min(N, 64).
  Quasimorphism(BasePoint x, BasePoint y, Homeo g, std::int64_t n, std::int64_t defect_n = 0);

  const BasePoint& x() const noexcept { return x_; }
  const BasePoint& y() const noexcept { return y_; }
  const Homeo& homeo() const noexcept { return g_; }
  double value(std::int64_t n) const;
  std::int64_t range() const noexcept { return n_; }
  const DefectEstimate& defect() const noexcept { return defect_; }
  double defect_bound() const noexcept { return defect_.bound(); }
  const Homogenisation& homogenised() const noexcept { return hom_; }

 private:
  BasePoint x_;
  BasePoint y_;
  Homeo g_;
  std::int64_t n_;
  std::int64_t table_n_ = 0;
  std::vector<double> forward_;
  std::vector<double> backward_;
  DefectEstimate defect_;
  Homogenisation hom_;
};

inline constexpr double kRotationGapTolerance = 1e-6;
inline constexpr double kFixedPointTolerance = 1e-12;

// Distance of a - b to the nearest integer.
double circular_gap(double a, double b);

// Distinct local rotation numbers at x and y (both with bounded G) certify g.
// The gap must exceed the tolerance at budgets N and 2N.
Certificate certify_two_rotation_points(const BasePoint& x, const BasePoint& y, const Homeo& g,
                                        std::int64_t budget, std::optional<double> c = std::nullopt,
                                        std::int64_t diagnostic_n = 0);

// Fixed points x, y and a path gamma from x to y with <a, g gamma - gamma> != 0.
// Throws PreconditionError when x or y is not fixed or gamma does not join them.
Certificate certify_two_fixed_points(const BasePoint& x, const BasePoint& y, const Homeo& g,
                                     const Path& gamma, std::optional<double> c = std::nullopt);

}  // namespace undistort
