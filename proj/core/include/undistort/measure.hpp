#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "undistort/certificate.hpp"
#include "undistort/homeo.hpp"

namespace undistort {

// A circle in the base space on which one coordinate is constant:
// {v = level} traversed in u, or {u = level} traversed in the second factor.
struct InvariantCircle {
  enum class Axis : std::uint8_t { FixedV, FixedU };

  std::string name;
  Axis axis = Axis::FixedV;
  double level = 0.0;

  // Point at circle parameter s in [0,1).
  BasePoint at(const Space& space, double s) const;
  // Homology class of the circle traversed once in the positive direction.
  Winding homology() const;
  // Distance from p to the circle (0 on it).
  double offset(const Space& space, const BasePoint& p) const;
};

// Circles named "boundary:0", "boundary:1" (annulus), "infinity" (compactified
// line), "circle" (the circle itself), "horizontal:<v>" and "vertical:<u>".
InvariantCircle named_circle(const Space& space, std::string_view name);

struct Atom {
  BasePoint point;
  double weight = 1.0;
};

enum class MeasureKind : std::uint8_t { Atomic, CircleUniformImage, Empirical };
std::string_view to_string(MeasureKind k);

inline constexpr std::size_t kCircleQuadrature = 4096;

class Measure {
 public:
  // Weights must be nonnegative and sum to 1 within 1e-12.
  static Measure atomic(const Space& space, std::vector<Atom> atoms);
  // Parameter-uniform measure on an invariant circle.
  static Measure circle(const Space& space, InvariantCircle circle,
                        std::size_t quadrature = kCircleQuadrature);
  // (1/N) sum_{k<N} delta_{g^k x}.
  static Measure empirical(const Homeo& g, const BasePoint& x, std::int64_t n);

  MeasureKind kind() const noexcept { return kind_; }
  const Space& space() const noexcept { return space_; }
  // Support points with weights; for circles the quadrature nodes.
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  const std::optional<InvariantCircle>& invariant_circle() const noexcept { return circle_; }
  std::int64_t orbit_length() const noexcept { return orbit_length_; }
  std::string describe() const;

 private:
  Measure(MeasureKind kind, Space space) : kind_(kind), space_(std::move(space)) {}

  MeasureKind kind_;
  Space space_;
  std::vector<Atom> atoms_;
  std::optional<InvariantCircle> circle_;
  std::int64_t orbit_length_ = 0;
};

// Invariance defect of mu under g as used for tolerances: 0 for atomic and
// circle measures, 2 sup|K(g)| / N over the orbit for empirical ones.
double invariance_defect(const Measure& mu, const Homeo& g);

// Max displacement of atoms (to the nearest atom of equal weight) or of circle
// quadrature nodes off the circle. 0 for empirical measures.
double invariance_residual(const Measure& mu, const Homeo& g);

// int K(g) dmu - K(g)(pin); pin defaults to the space basepoint.
double integrate_k(const Measure& mu, const Homeo& g,
                   const std::optional<BasePoint>& pin = std::nullopt);

inline constexpr double kExactNielsenTolerance = 1e-6;
inline constexpr double kInvarianceTolerance = 1e-9;

struct NielsenResult {
  double integral_mu = 0.0;
  double integral_nu = 0.0;
  double gap = 0.0;
  double tolerance = kExactNielsenTolerance;
  bool equivalent = true;
};

// |int K(g) d(mu - nu)|. Throws PreconditionError when an atomic or circle
// measure is not g-invariant.
NielsenResult nielsen_gap(const Measure& mu, const Measure& nu, const Homeo& g,
                          const std::optional<BasePoint>& pin = std::nullopt);

Certificate certify_two_measures(const Measure& mu, const Measure& nu, const Homeo& g,
                                 std::optional<double> c = std::nullopt);

struct SccResult {
  double rotation = 0.0;  // lifted rotation number of g restricted to the circle
  std::int64_t pairing = 0;
  double value = 0.0;  // rotation * pairing
  std::int64_t n_used = 0;
  double error = 0.0;  // 1 / N heuristic, 0 for closed powers
};

inline constexpr std::int64_t kSccBudget = 100'000;

// Throws PreconditionError when the circle is not invariant.
SccResult scc_rotation_integral(const InvariantCircle& circle, const Homeo& g,
                                std::int64_t budget = kSccBudget);

struct RationalityReport {
  std::optional<std::pair<std::int64_t, std::int64_t>> relation;  // k1 rho1 = k2 rho2 mod 1
  // p/q reconstructions with q <= 64, when they match within tolerance.
  std::optional<std::pair<std::int64_t, std::int64_t>> rho1_fraction;
  std::optional<std::pair<std::int64_t, std::int64_t>> rho2_fraction;
  std::string message;
};

inline constexpr std::int64_t kRelationBound = 64;
inline constexpr double kRelationTolerance = 1e-9;

// Searches nonzero k1, k2 with |k| <= 64 and k1 rho1 = k2 rho2 in R/Z.
// Throws PreconditionError when a pairing is zero.
RationalityReport rationality_check(double rho1, std::int64_t pairing1, double rho2,
                                    std::int64_t pairing2);

// Best rational approximation p/q with q <= max_den via continued fractions.
std::pair<std::int64_t, std::int64_t> best_fraction(double x, std::int64_t max_den);

}  // namespace undistort
