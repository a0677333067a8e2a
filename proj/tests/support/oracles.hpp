#pragma once

// Reference computations written independently of the library, used to derive
// expected values for the tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <vector>

namespace oracle {

// K(g^n)(t, x) for the shear (t, x) -> (t + |x+1| - |x|, x + 1).
inline double shear_k(std::int64_t n, double x) {
  if (std::isinf(x)) return 0.0;
  return std::abs(x + static_cast<double>(n)) - std::abs(x);
}

// G_{(0,0)}(g^m, g^n) for the shear, read off from the K formula at 0 and n.
inline double shear_g_origin(std::int64_t m, std::int64_t n) {
  return shear_k(m, static_cast<double>(n)) - shear_k(m, 0.0);
}

// Brute-force max |G| over |m|,|n| <= big_n.
inline double shear_g_sup(std::int64_t big_n) {
  double sup = 0.0;
  for (std::int64_t m = -big_n; m <= big_n; ++m) {
    for (std::int64_t n = -big_n; n <= big_n; ++n) {
      sup = std::max(sup, std::abs(shear_g_origin(m, n)));
    }
  }
  return sup;
}

// Number of lattice points of Z^2 with |a| + |b| <= r.
inline std::size_t taxicab_ball(std::int64_t r) {
  std::size_t count = 0;
  for (std::int64_t a = -r; a <= r; ++a) {
    for (std::int64_t b = -r; b <= r; ++b) {
      if (std::abs(a) + std::abs(b) <= r) ++count;
    }
  }
  return count;
}

// Ball of radius r in Z/q with generators +-1.
inline std::size_t cyclic_ball(std::int64_t q, std::int64_t r) {
  std::vector<bool> seen(static_cast<std::size_t>(q), false);
  std::size_t count = 0;
  for (std::int64_t k = -r; k <= r; ++k) {
    const auto idx = static_cast<std::size_t>(((k % q) + q) % q);
    if (!seen[idx]) {
      seen[idx] = true;
      ++count;
    }
  }
  return count;
}

// A piecewise-linear lift given by nodes (x_i, y_i) on [0,1) with the periodic
// continuation (x_0 + 1, y_0 + 1). Plain double evaluation.
struct PLLift {
  std::vector<double> xs;
  std::vector<double> ys;

  double operator()(double x) const {
    const double m = std::floor(x);
    const double f = x - m;
    std::vector<double> px{xs.back() - 1.0};
    std::vector<double> py{ys.back() - 1.0};
    px.insert(px.end(), xs.begin(), xs.end());
    py.insert(py.end(), ys.begin(), ys.end());
    px.push_back(xs.front() + 1.0);
    py.push_back(ys.front() + 1.0);
    std::size_t i = 0;
    while (i + 2 < px.size() && f >= px[i + 1]) ++i;
    return m + py[i] + (py[i + 1] - py[i]) * (f - px[i]) / (px[i + 1] - px[i]);
  }
};

// Classical rotation number lim (F^n(x) - x) / n by direct iteration.
template <class F>
double classical_rotation(const F& lift, double x, std::int64_t n) {
  double y = x;
  for (std::int64_t k = 0; k < n; ++k) y = lift(y);
  return (y - x) / static_cast<double>(n);
}

}  // namespace oracle
