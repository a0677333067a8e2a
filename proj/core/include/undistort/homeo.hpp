#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>

#include "undistort/numbers.hpp"
#include "undistort/pl_map.hpp"
#include "undistort/space.hpp"

namespace undistort {

enum class Flavor : std::uint8_t { ExactPL, ClosedForm, NumericSampled };
std::string_view to_string(Flavor f);

// Induced map on H_1 in the space's basis; column j is the image of basis
// loop j.
using HomologyAction = std::array<std::array<std::int64_t, 2>, 2>;
inline constexpr HomologyAction kTrivialAction{{{1, 0}, {0, 1}}};

// Exact canonical data for the families that admit it. Two elements with the
// same canonical_key() are the same homeomorphism of the base space.

// x -> pl(x) + shift on the circle; `shift` has no rational part.
struct CircleElement {
  PLCircleMap pl;
  ExactAngle shift;
};
// (s, r) -> (s + (1-r) rho0 + r rho1, r).
struct AnnulusTwistElement {
  ExactAngle rho0;
  ExactAngle rho1;
};
// n-th power of (t, x) -> (t + |x+1| - |x|, x + 1) on R/Z x (R u {inf}).
struct TorusShearElement {
  std::int64_t n = 0;
};
// (s1, s2) -> (s1 + a sin^2(pi s2), s2) on the torus.
struct TorusTwistElement {
  Rational amplitude;
};
// Time-t map of the gradient flow ds/dt = -sin(2 pi s); fixes 0 and 1/2.
struct GradientElement {
  Rational time;
};

using ExactElement = std::variant<CircleElement, AnnulusTwistElement, TorusShearElement,
                                  TorusTwistElement, GradientElement>;

// outer o inner. Throws UnsupportedFlavorError for mixed families or for circle
// elements whose composite leaves the (PL + irrational shift) normal form.
ExactElement exact_compose(const ExactElement& outer, const ExactElement& inner);
ExactElement exact_inverse(const ExactElement& e);
ExactElement exact_power(const ExactElement& e, std::int64_t n);
ExactElement exact_identity(SpaceKind kind);
std::string canonical_key(const ExactElement& e);
// Space kind the element lives on.
SpaceKind exact_space_kind(const ExactElement& e);

// A homeomorphism of a supported space, given by an equivariant lift to the
// universal cover.
class HomeoImpl : public std::enable_shared_from_this<HomeoImpl> {
 public:
  explicit HomeoImpl(Space space) : space_(std::move(space)) {}
  virtual ~HomeoImpl() = default;
  HomeoImpl(const HomeoImpl&) = delete;
  HomeoImpl& operator=(const HomeoImpl&) = delete;

  const Space& space() const noexcept { return space_; }

  virtual LiftPoint apply(const LiftPoint& p) const = 0;
  // F(lift(p)) - F(p). Families override with closed forms.
  virtual double displacement(const LiftPoint& p) const;
  virtual Flavor flavor() const = 0;
  virtual std::string describe() const = 0;
  virtual std::optional<double> lipschitz() const { return std::nullopt; }
  virtual HomologyAction homology_action() const { return kTrivialAction; }
  // True when power(n) is a closed form that is cheap for any n.
  virtual bool closed_powers() const { return false; }
  virtual std::optional<ExactElement> exact() const { return std::nullopt; }
  virtual std::shared_ptr<const HomeoImpl> inverse() const = 0;
  // Default: balanced composition tree of depth O(log |n|), memoised.
  virtual std::shared_ptr<const HomeoImpl> power(std::int64_t n) const;

 private:
  Space space_;
  mutable std::mutex memo_mutex_;
  mutable std::map<std::int64_t, std::weak_ptr<const HomeoImpl>> power_memo_;
};

class Homeo {
 public:
  explicit Homeo(std::shared_ptr<const HomeoImpl> impl);

  static Homeo identity(const Space& space);
  static Homeo rigid_rotation(const ExactAngle& rho, const Space& space = Space::circle());
  static Homeo annulus_twist(const ExactAngle& rho0, const ExactAngle& rho1,
                             const Space& space = Space::annulus());
  static Homeo torus_shear(std::int64_t n = 1, const Space& space = Space::circle_times_line());
  static Homeo gradient_time_one(const Rational& time = 1, const Space& space = Space::circle());
  static Homeo torus_twist(const Rational& amplitude, const Space& space = Space::torus2());
  static Homeo pl(const PLCircleMap& map, const Space& space = Space::circle(),
                  const ExactAngle& irrational_shift = {});
  static Homeo from_exact(const Space& space, const ExactElement& e);
  // Lift tabulated on a per_axis^d grid with (bi)linear interpolation of the
  // periodic displacement. Circle, annulus and torus only.
  static Homeo sampled(const Homeo& source, std::size_t per_axis);

  const Space& space() const noexcept { return impl_->space(); }
  LiftPoint lift(const LiftPoint& p) const { return impl_->apply(p); }
  BasePoint operator()(const BasePoint& p) const;
  CoverPoint lift_cover(const CoverPoint& p) const;
  double displacement(const LiftPoint& p) const { return impl_->displacement(p); }

  Flavor flavor() const { return impl_->flavor(); }
  std::string describe() const { return impl_->describe(); }
  std::optional<double> lipschitz() const { return impl_->lipschitz(); }
  HomologyAction homology_action() const { return impl_->homology_action(); }
  bool preserves_class() const;
  bool closed_powers() const { return impl_->closed_powers(); }
  std::optional<ExactElement> exact() const { return impl_->exact(); }

  Homeo inverse() const;
  Homeo power(std::int64_t n) const;

  const std::shared_ptr<const HomeoImpl>& impl() const noexcept { return impl_; }

 private:
  std::shared_ptr<const HomeoImpl> impl_;
};

// g o h. Exact families stay exact; anything else becomes a lazy composite.
Homeo compose(const Homeo& g, const Homeo& h);
Homeo inverse(const Homeo& g);
Homeo power(const Homeo& g, std::int64_t n);

// Max over samples and deck shifts k in -3..3 of |lift(p + k) - lift(p) - k|.
double equivariance_residual(const Homeo& g, std::size_t samples, std::uint64_t seed = 1);
// Max over samples of the distance between the base images of g(h(x)) and
// x, for h = inverse(g) (and vice versa).
double inverse_residual(const Homeo& g, std::size_t samples, std::uint64_t seed = 1);
// False when two sampled distinct base points have coincident images.
bool injective_on_samples(const Homeo& g, std::size_t samples, std::uint64_t seed = 1);

}  // namespace undistort
