#include "undistort/homeo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "undistort/errors.hpp"

namespace undistort {

std::string_view to_string(Flavor f) {
  switch (f) {
    case Flavor::ExactPL: return "exact-pl";
    case Flavor::ClosedForm: return "closed-form";
    case Flavor::NumericSampled: return "numeric-sampled";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Exact canonical forms

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void unsupported(const std::string& what) { throw UnsupportedFlavorError(what); }

}  // namespace

ExactElement exact_compose(const ExactElement& outer, const ExactElement& inner) {
  if (outer.index() != inner.index()) unsupported("cannot compose exact elements of different families");
  return std::visit(
      Overloaded{
          [&](const CircleElement& a) -> ExactElement {
            const auto& b = std::get<CircleElement>(inner);
            if (b.shift.is_zero()) return CircleElement{a.pl.after(b.pl), a.shift};
            if (a.pl.is_translation()) {
              return CircleElement{b.pl.shifted(a.pl.translation_amount()), a.shift + b.shift};
            }
            unsupported("PL map after an irrational shift has no exact normal form");
          },
          [&](const AnnulusTwistElement& a) -> ExactElement {
            const auto& b = std::get<AnnulusTwistElement>(inner);
            return AnnulusTwistElement{a.rho0 + b.rho0, a.rho1 + b.rho1};
          },
          [&](const TorusShearElement& a) -> ExactElement {
            return TorusShearElement{a.n + std::get<TorusShearElement>(inner).n};
          },
          [&](const TorusTwistElement& a) -> ExactElement {
            return TorusTwistElement{a.amplitude + std::get<TorusTwistElement>(inner).amplitude};
          },
          [&](const GradientElement& a) -> ExactElement {
            return GradientElement{a.time + std::get<GradientElement>(inner).time};
          },
      },
      outer);
}

ExactElement exact_inverse(const ExactElement& e) {
  return std::visit(
      Overloaded{
          [](const CircleElement& a) -> ExactElement {
            if (a.shift.is_zero()) return CircleElement{a.pl.inverse(), {}};
            if (a.pl.is_translation()) {
              return CircleElement{PLCircleMap::translation(-a.pl.translation_amount()), -a.shift};
            }
            unsupported("inverse of a PL map with irrational shift has no exact normal form");
          },
          [](const AnnulusTwistElement& a) -> ExactElement {
            return AnnulusTwistElement{-a.rho0, -a.rho1};
          },
          [](const TorusShearElement& a) -> ExactElement { return TorusShearElement{-a.n}; },
          [](const TorusTwistElement& a) -> ExactElement {
            return TorusTwistElement{-a.amplitude};
          },
          [](const GradientElement& a) -> ExactElement { return GradientElement{-a.time}; },
      },
      e);
}

ExactElement exact_power(const ExactElement& e, std::int64_t n) {
  const Rational k(n);
  return std::visit(
      Overloaded{
          [&](const CircleElement& a) -> ExactElement {
            if (a.shift.is_zero()) return CircleElement{a.pl.power(n), {}};
            if (a.pl.is_translation()) {
              return CircleElement{PLCircleMap::translation(a.pl.translation_amount() * k),
                                   a.shift * k};
            }
            unsupported("power of a PL map with irrational shift has no exact normal form");
          },
          [&](const AnnulusTwistElement& a) -> ExactElement {
            return AnnulusTwistElement{a.rho0 * k, a.rho1 * k};
          },
          [&](const TorusShearElement& a) -> ExactElement { return TorusShearElement{a.n * n}; },
          [&](const TorusTwistElement& a) -> ExactElement {
            return TorusTwistElement{a.amplitude * k};
          },
          [&](const GradientElement& a) -> ExactElement { return GradientElement{a.time * k}; },
      },
      e);
}

ExactElement exact_identity(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::Circle: return CircleElement{};
    case SpaceKind::Annulus: return AnnulusTwistElement{};
    case SpaceKind::Torus2: return TorusTwistElement{};
    case SpaceKind::CircleTimesCompactifiedLine: return TorusShearElement{};
  }
  return CircleElement{};
}

SpaceKind exact_space_kind(const ExactElement& e) {
  return std::visit(Overloaded{
                        [](const CircleElement&) { return SpaceKind::Circle; },
                        [](const AnnulusTwistElement&) { return SpaceKind::Annulus; },
                        [](const TorusShearElement&) {
                          return SpaceKind::CircleTimesCompactifiedLine;
                        },
                        [](const TorusTwistElement&) { return SpaceKind::Torus2; },
                        [](const GradientElement&) { return SpaceKind::Circle; },
                    },
                    e);
}

std::string canonical_key(const ExactElement& e) {
  return std::visit(
      Overloaded{
          [](const CircleElement& a) {
            return "circle:" + a.pl.key() + (a.shift.is_zero() ? "" : "+" + a.shift.to_string());
          },
          [](const AnnulusTwistElement& a) {
            // (rho0 + m, rho1 + m) is the same map for integer m.
            const Rational m(floor(a.rho0.rational_part()));
            return "annulus:" + (a.rho0 - ExactAngle(m)).to_string() + "," +
                   (a.rho1 - ExactAngle(m)).to_string();
          },
          [](const TorusShearElement& a) { return "shear:" + std::to_string(a.n); },
          [](const TorusTwistElement& a) { return "twist:" + to_string(a.amplitude); },
          [](const GradientElement& a) {
            return a.time == 0 ? std::string("circle:pl[0>0]") : "gradient:" + to_string(a.time);
          },
      },
      e);
}

// ---------------------------------------------------------------------------
// Implementations

double HomeoImpl::displacement(const LiftPoint& p) const {
  return space_.potential(apply(p)) - space_.potential(p);
}

namespace {

HomologyAction multiply(const HomologyAction& a, const HomologyAction& b) {
  HomologyAction out{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    }
  }
  return out;
}

void require_kind(const Space& space, SpaceKind kind, std::string_view family) {
  if (space.kind() != kind) {
    throw SpaceMismatchError(fmt::format("{} lives on {}, not on {}", family, to_string(kind),
                                         to_string(space.kind())));
  }
}

class Composite final : public HomeoImpl {
 public:
  Composite(std::shared_ptr<const HomeoImpl> outer, std::shared_ptr<const HomeoImpl> inner)
      : HomeoImpl(outer->space()), outer_(std::move(outer)), inner_(std::move(inner)) {}

  LiftPoint apply(const LiftPoint& p) const override { return outer_->apply(inner_->apply(p)); }
  Flavor flavor() const override {
    if (outer_->flavor() == Flavor::NumericSampled || inner_->flavor() == Flavor::NumericSampled) {
      return Flavor::NumericSampled;
    }
    return Flavor::ClosedForm;
  }
  std::string describe() const override {
    return "(" + outer_->describe() + " o " + inner_->describe() + ")";
  }
  std::optional<double> lipschitz() const override {
    const auto a = outer_->lipschitz();
    const auto b = inner_->lipschitz();
    if (!a || !b) return std::nullopt;
    return *a * *b;
  }
  HomologyAction homology_action() const override {
    return multiply(outer_->homology_action(), inner_->homology_action());
  }
  std::shared_ptr<const HomeoImpl> inverse() const override {
    return std::make_shared<Composite>(inner_->inverse(), outer_->inverse());
  }

 private:
  std::shared_ptr<const HomeoImpl> outer_;
  std::shared_ptr<const HomeoImpl> inner_;
};

class RigidRotation final : public HomeoImpl {
 public:
  RigidRotation(Space space, ExactAngle rho)
      : HomeoImpl(std::move(space)), rho_(std::move(rho)), value_(rho_.value()) {
    require_kind(this->space(), SpaceKind::Circle, "rotation");
  }

  LiftPoint apply(const LiftPoint& p) const override { return {p.u + value_, 0.0, 0}; }
  double displacement(const LiftPoint&) const override {
    return static_cast<double>(space().pairing()[0]) * value_;
  }
  Flavor flavor() const override { return Flavor::ClosedForm; }
  std::string describe() const override { return "rotation(" + rho_.to_string() + ")"; }
  std::optional<double> lipschitz() const override { return 1.0; }
  bool closed_powers() const override { return true; }
  std::optional<ExactElement> exact() const override {
    return CircleElement{PLCircleMap::translation(rho_.rational_part()), rho_.irrational_part()};
  }
  std::shared_ptr<const HomeoImpl> inverse() const override {
    return std::make_shared<RigidRotation>(space(), -rho_);
  }
  std::shared_ptr<const HomeoImpl> power(std::int64_t n) const override {
    return std::make_shared<RigidRotation>(space(), rho_ * Rational(n));
  }

 private:
  ExactAngle rho_;
  double value_;
};

class AnnulusTwist final : public HomeoImpl {
 public:
  AnnulusTwist(Space space, ExactAngle rho0, ExactAngle rho1)
      : HomeoImpl(std::move(space)),
        rho0_(std::move(rho0)),
        rho1_(std::move(rho1)),
        v0_(rho0_.value()),
        v1_(rho1_.value()) {
    require_kind(this->space(), SpaceKind::Annulus, "annulus-twist");
  }

  LiftPoint apply(const LiftPoint& p) const override {
    return {p.u + shift(p.v), p.v, 0};
  }
  double displacement(const LiftPoint& p) const override {
    return static_cast<double>(space().pairing()[0]) * shift(p.v);
  }
  Flavor flavor() const override { return Flavor::ClosedForm; }
  std::string describe() const override {
    return "annulus-twist(" + rho0_.to_string() + "," + rho1_.to_string() + ")";
  }
  std::optional<double> lipschitz() const override { return 1.0 + std::abs(v1_ - v0_); }
  bool closed_powers() const override { return true; }
  std::optional<ExactElement> exact() const override { return AnnulusTwistElement{rho0_, rho1_}; }
  std::shared_ptr<const HomeoImpl> inverse() const override {
    return std::make_shared<AnnulusTwist>(space(), -rho0_, -rho1_);
  }
  std::shared_ptr<const HomeoImpl> power(std::int64_t n) const override {
    return std::make_shared<AnnulusTwist>(space(), rho0_ * Rational(n), rho1_ * Rational(n));
  }

 private:
  double shift(double r) const { return (1.0 - r) * v0_ + r * v1_; }

  ExactAngle rho0_;
  ExactAngle rho1_;
  double v0_;
  double v1_;
};

class TorusShear final : public HomeoImpl {
 public:
  TorusShear(Space space, std::int64_t n) : HomeoImpl(std::move(space)), n_(n) {
    require_kind(this->space(), SpaceKind::CircleTimesCompactifiedLine, "torus-shear");
  }

  LiftPoint apply(const LiftPoint& p) const override {
    // The circle at infinity is fixed pointwise.
    if (std::isinf(p.v)) return p;
    const double n = static_cast<double>(n_);
    return {p.u + std::abs(p.v + n) - std::abs(p.v), p.v + n, p.v_turns};
  }
  double displacement(const LiftPoint& p) const override {
    if (std::isinf(p.v)) return 0.0;
    const double n = static_cast<double>(n_);
    const auto& k = space().pairing();
    double d = static_cast<double>(k[0]) * (std::abs(p.v + n) - std::abs(p.v));
    if (k[1] != 0) d += static_cast<double>(k[1]) * (line_angle(p.v + n) - line_angle(p.v));
    return d;
  }
  Flavor flavor() const override { return Flavor::ClosedForm; }
  std::string describe() const override { return fmt::format("torus-shear^{}", n_); }
  // The loop through infinity picks up 2n turns in the t-direction.
  HomologyAction homology_action() const override { return {{{1, 2 * n_}, {0, 1}}}; }
  bool closed_powers() const override { return true; }
  std::optional<ExactElement> exact() const override { return TorusShearElement{n_}; }
  std::shared_ptr<const HomeoImpl> inverse() const override {
    return std::make_shared<TorusShear>(space(), -n_);
  }
  std::shared_ptr<const HomeoImpl> power(std::int64_t n) const override {
    return std::make_shared<TorusShear>(space(), n_ * n);
  }

 private:
  std::int64_t n_;
};

class TorusTwist final : public HomeoImpl {
 public:
  TorusTwist(Space space, Rational amplitude)
      : HomeoImpl(std::move(space)), amplitude_(std::move(amplitude)), a_(to_double(amplitude_)) {
    require_kind(this->space(), SpaceKind::Torus2, "torus-twist");
  }

  LiftPoint apply(const LiftPoint& p) const override { return {p.u + shift(p.v), p.v, 0}; }
  double displacement(const LiftPoint& p) const override {
    return static_cast<double>(space().pairing()[0]) * shift(p.v);
  }
  Flavor flavor() const override { return Flavor::ClosedForm; }
  std::string describe() const override { return "torus-twist(" + to_string(amplitude_) + ")"; }
  std::optional<double> lipschitz() const override {
    return 1.0 + std::abs(a_) * std::numbers::pi;
  }
  bool closed_powers() const override { return true; }
  std::optional<ExactElement> exact() const override { return TorusTwistElement{amplitude_}; }
  std::shared_ptr<const HomeoImpl> inverse() const override {
    return std::make_shared<TorusTwist>(space(), -amplitude_);
  }
  std::shared_ptr<const HomeoImpl> power(std::int64_t n) const override {
    return std::make_shared<TorusTwist>(space(), amplitude_ * Rational(n));
  }

 private:
  double shift(double v) const {
    const double s = std::sin(std::numbers::pi * v);
    return a_ * s * s;
  }

  Rational amplitude_;
  double a_;
};

class GradientTimeOne final : public HomeoImpl {
 public:
  GradientTimeOne(Space space, Rational time)
      : HomeoImpl(std::move(space)),
        time_(std::move(time)),
        contraction_(std::exp(-2.0 * std::numbers::pi * to_double(time_))) {
    require_kind(this->space(), SpaceKind::Circle, "gradient");
  }

  // tan(pi s(t)) = tan(pi s(0)) exp(-2 pi t) solves ds/dt = -sin(2 pi s).
  LiftPoint apply(const LiftPoint& p) const override {
    const double m = std::floor(p.u + 0.5);
    const double w = p.u - m;
    if (w == -0.5) return {p.u, 0.0, 0};
    return {m + std::atan(std::tan(std::numbers::pi * w) * contraction_) / std::numbers::pi, 0.0,
            0};
  }
  Flavor flavor() const override { return Flavor::ClosedForm; }
  std::string describe() const override { return "gradient(" + to_string(time_) + ")"; }
  std::optional<double> lipschitz() const override {
    return std::max(contraction_, 1.0 / contraction_);
  }
  bool closed_powers() const override { return true; }
  std::optional<ExactElement> exact() const override { return GradientElement{time_}; }
  std::shared_ptr<const HomeoImpl> inverse() const override {
    return std::make_shared<GradientTimeOne>(space(), -time_);
  }
  std::shared_ptr<const HomeoImpl> power(std::int64_t n) const override {
    return std::make_shared<GradientTimeOne>(space(), time_ * Rational(n));
  }

 private:
  Rational time_;
  double contraction_;
};

class PLHomeo final : public HomeoImpl {
 public:
  PLHomeo(Space space, CircleElement element)
      : HomeoImpl(std::move(space)), element_(std::move(element)), shift_(element_.shift.value()) {
    require_kind(this->space(), SpaceKind::Circle, "pl");
    if (!element_.shift.rational_part().is_zero()) {
      throw PreconditionError("PL homeomorphism shift must be purely irrational");
    }
  }

  LiftPoint apply(const LiftPoint& p) const override { return {element_.pl(p.u) + shift_, 0.0, 0}; }
  Flavor flavor() const override { return Flavor::ExactPL; }
  std::string describe() const override {
    return element_.pl.key() + (element_.shift.is_zero() ? "" : "+" + element_.shift.to_string());
  }
  std::optional<double> lipschitz() const override { return to_double(element_.pl.max_slope()); }
  std::optional<ExactElement> exact() const override { return element_; }
  std::shared_ptr<const HomeoImpl> inverse() const override {
    if (element_.shift.is_zero() || element_.pl.is_translation()) {
      return Homeo::from_exact(space(), exact_inverse(element_)).impl();
    }
    return std::make_shared<PLShiftInverse>(space(), element_);
  }
  std::shared_ptr<const HomeoImpl> power(std::int64_t n) const override {
    if (element_.shift.is_zero() || element_.pl.is_translation()) {
      return Homeo::from_exact(space(), exact_power(element_, n)).impl();
    }
    return HomeoImpl::power(n);
  }

 private:
  // x -> pl^{-1}(x - shift): the inverse when no exact normal form exists.
  class PLShiftInverse final : public HomeoImpl {
   public:
    PLShiftInverse(Space space, CircleElement forward)
        : HomeoImpl(std::move(space)),
          forward_(std::move(forward)),
          inverse_pl_(forward_.pl.inverse()),
          shift_(forward_.shift.value()) {}

    LiftPoint apply(const LiftPoint& p) const override {
      return {inverse_pl_(p.u - shift_), 0.0, 0};
    }
    Flavor flavor() const override { return Flavor::ClosedForm; }
    std::string describe() const override { return "inverse(" + forward_.pl.key() + ")"; }
    std::optional<double> lipschitz() const override {
      return to_double(inverse_pl_.max_slope());
    }
    std::shared_ptr<const HomeoImpl> inverse() const override {
      return std::make_shared<PLHomeo>(space(), forward_);
    }

   private:
    CircleElement forward_;
    PLCircleMap inverse_pl_;
    double shift_;
  };

  CircleElement element_;
  double shift_;
};

class Sampled final : public HomeoImpl {
 public:
  Sampled(const Homeo& source, std::size_t per_axis)
      : HomeoImpl(source.space()), m_(Space::grid_axis(per_axis)), description_(source.describe()) {
    const auto kind = space().kind();
    if (kind == SpaceKind::CircleTimesCompactifiedLine) {
      throw UnsupportedFlavorError("sampled maps need a compact coordinate chart");
    }
    rows_ = kind == SpaceKind::Circle ? 1 : (kind == SpaceKind::Annulus ? m_ + 1 : m_);
    du_.resize(m_ * rows_);
    dv_.resize(m_ * rows_);
    const double step = 1.0 / static_cast<double>(m_);
    double worst = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < rows_; ++j) {
        const LiftPoint p{step * i, kind == SpaceKind::Circle ? 0.0 : step * j, 0};
        const LiftPoint q = source.lift(p);
        du_[i * rows_ + j] = q.u - p.u;
        dv_[i * rows_ + j] = kind == SpaceKind::Circle ? 0.0 : q.v - p.v;
      }
    }
    if (auto l = source.lipschitz()) {
      lipschitz_ = *l;
    } else {
      for (std::size_t i = 0; i < m_; ++i) {
        const std::size_t next = (i + 1) % m_;
        for (std::size_t j = 0; j < rows_; ++j) {
          worst = std::max(worst, std::abs(du_[next * rows_ + j] - du_[i * rows_ + j]) * m_);
        }
      }
      lipschitz_ = 1.0 + worst;
    }
  }

  LiftPoint apply(const LiftPoint& p) const override {
    const double fu = (p.u - std::floor(p.u)) * static_cast<double>(m_);
    const auto i0 = std::min(static_cast<std::size_t>(fu), m_ - 1);
    const std::size_t i1 = (i0 + 1) % m_;
    const double su = fu - static_cast<double>(i0);
    double sv = 0.0;
    std::size_t j0 = 0;
    std::size_t j1 = 0;
    if (space().kind() == SpaceKind::Annulus) {
      const double fv = std::clamp(p.v, 0.0, 1.0) * static_cast<double>(m_);
      j0 = std::min(static_cast<std::size_t>(fv), m_ - 1);
      j1 = j0 + 1;
      sv = fv - static_cast<double>(j0);
    } else if (space().kind() == SpaceKind::Torus2) {
      const double fv = (p.v - std::floor(p.v)) * static_cast<double>(m_);
      j0 = std::min(static_cast<std::size_t>(fv), m_ - 1);
      j1 = (j0 + 1) % m_;
      sv = fv - static_cast<double>(j0);
    }
    auto bilinear = [&](const std::vector<double>& f) {
      const double a = f[i0 * rows_ + j0] * (1 - sv) + f[i0 * rows_ + j1] * sv;
      const double b = f[i1 * rows_ + j0] * (1 - sv) + f[i1 * rows_ + j1] * sv;
      return a * (1 - su) + b * su;
    };
    LiftPoint q = p;
    q.u += bilinear(du_);
    if (space().kind() != SpaceKind::Circle) q.v += bilinear(dv_);
    return q;
  }
  Flavor flavor() const override { return Flavor::NumericSampled; }
  std::string describe() const override {
    return fmt::format("sampled[{}]({})", m_, description_);
  }
  std::optional<double> lipschitz() const override { return lipschitz_; }
  std::shared_ptr<const HomeoImpl> inverse() const override {
    throw UnsupportedFlavorError("numeric sampled maps are not invertible");
  }

 private:
  std::size_t m_;
  std::size_t rows_ = 1;
  std::string description_;
  std::vector<double> du_;
  std::vector<double> dv_;
  double lipschitz_ = 1.0;
};

}  // namespace

std::shared_ptr<const HomeoImpl> HomeoImpl::power(std::int64_t n) const {
  if (n == 0) return Homeo::identity(space_).impl();
  if (n == 1) return shared_from_this();
  if (n < 0) return inverse()->power(-n);
  {
    std::lock_guard lock(memo_mutex_);
    if (auto it = power_memo_.find(n); it != power_memo_.end()) {
      if (auto cached = it->second.lock()) return cached;
    }
  }
  const auto half = power(n / 2);
  std::shared_ptr<const HomeoImpl> result = std::make_shared<Composite>(half, half);
  if (n % 2 != 0) result = std::make_shared<Composite>(result, shared_from_this());
  std::lock_guard lock(memo_mutex_);
  power_memo_[n] = result;
  return result;
}

// ---------------------------------------------------------------------------
// Homeo

Homeo::Homeo(std::shared_ptr<const HomeoImpl> impl) : impl_(std::move(impl)) {
  if (!impl_) throw PreconditionError("null homeomorphism");
}

Homeo Homeo::identity(const Space& space) { return from_exact(space, exact_identity(space.kind())); }

Homeo Homeo::rigid_rotation(const ExactAngle& rho, const Space& space) {
  return Homeo(std::make_shared<RigidRotation>(space, rho));
}

Homeo Homeo::annulus_twist(const ExactAngle& rho0, const ExactAngle& rho1, const Space& space) {
  return Homeo(std::make_shared<AnnulusTwist>(space, rho0, rho1));
}

Homeo Homeo::torus_shear(std::int64_t n, const Space& space) {
  return Homeo(std::make_shared<TorusShear>(space, n));
}

Homeo Homeo::gradient_time_one(const Rational& time, const Space& space) {
  return Homeo(std::make_shared<GradientTimeOne>(space, time));
}

Homeo Homeo::torus_twist(const Rational& amplitude, const Space& space) {
  return Homeo(std::make_shared<TorusTwist>(space, amplitude));
}

Homeo Homeo::pl(const PLCircleMap& map, const Space& space, const ExactAngle& irrational_shift) {
  return from_exact(space, CircleElement{map, irrational_shift});
}

Homeo Homeo::from_exact(const Space& space, const ExactElement& e) {
  return std::visit(
      Overloaded{
          [&](const CircleElement& a) -> Homeo {
            if (a.pl.is_translation()) {
              return rigid_rotation(ExactAngle(a.pl.translation_amount()) + a.shift, space);
            }
            return Homeo(std::make_shared<PLHomeo>(space, a));
          },
          [&](const AnnulusTwistElement& a) { return annulus_twist(a.rho0, a.rho1, space); },
          [&](const TorusShearElement& a) { return torus_shear(a.n, space); },
          [&](const TorusTwistElement& a) { return torus_twist(a.amplitude, space); },
          [&](const GradientElement& a) -> Homeo {
            if (a.time == 0) return rigid_rotation(ExactAngle(), space);
            return gradient_time_one(a.time, space);
          },
      },
      e);
}

Homeo Homeo::sampled(const Homeo& source, std::size_t per_axis) {
  return Homeo(std::make_shared<Sampled>(source, per_axis));
}

BasePoint Homeo::operator()(const BasePoint& p) const {
  return space().project(lift(space().canonical_lift(p)));
}

CoverPoint Homeo::lift_cover(const CoverPoint& p) const {
  const Space& s = space();
  const LiftPoint image = lift(s.canonical_lift(p.base));
  const BasePoint base = s.project(image);
  return {base, p.sheet + s.potential(image) - s.potential(base)};
}

bool Homeo::preserves_class() const {
  const auto m = homology_action();
  const auto& k = space().pairing();
  for (std::size_t j = 0; j < k.size(); ++j) {
    std::int64_t image = 0;
    for (std::size_t i = 0; i < k.size(); ++i) image += k[i] * m[i][j];
    if (image != k[j]) return false;
  }
  return true;
}

Homeo Homeo::inverse() const { return Homeo(impl_->inverse()); }

Homeo Homeo::power(std::int64_t n) const { return Homeo(impl_->power(n)); }

Homeo compose(const Homeo& g, const Homeo& h) {
  if (!(g.space() == h.space())) {
    throw SpaceMismatchError("cannot compose maps of " + g.space().describe() + " and " +
                             h.space().describe());
  }
  const auto a = g.exact();
  const auto b = h.exact();
  if (a && b && a->index() == b->index()) {
    try {
      return Homeo::from_exact(g.space(), exact_compose(*a, *b));
    } catch (const UnsupportedFlavorError&) {
      // Falls through to the lazy composite.
    }
  }
  return Homeo(std::make_shared<Composite>(g.impl(), h.impl()));
}

Homeo inverse(const Homeo& g) { return g.inverse(); }

Homeo power(const Homeo& g, std::int64_t n) { return g.power(n); }

namespace {

// Max-norm distance between two universal-cover points in unwrapped angle
// coordinates (plus the radius on the annulus).
double lift_gap(const Space& space, const LiftPoint& a, const LiftPoint& b) {
  const auto x = space.angles(a);
  const auto y = space.angles(b);
  double gap = std::max(std::abs(x[0] - y[0]), std::abs(x[1] - y[1]));
  if (space.kind() == SpaceKind::Annulus) gap = std::max(gap, std::abs(a.v - b.v));
  return gap;
}

}  // namespace

double equivariance_residual(const Homeo& g, std::size_t samples, std::uint64_t seed) {
  const Space& s = g.space();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> shift(-3, 3);
  double worst = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const LiftPoint p = s.deck(s.canonical_lift(s.random_point(rng)), {shift(rng), 0});
    Winding k{shift(rng), s.second_is_angular() ? shift(rng) : 0};
    const LiftPoint a = g.lift(s.deck(p, k));
    const LiftPoint b = s.deck(g.lift(p), k);
    worst = std::max(worst, lift_gap(s, a, b));
  }
  return worst;
}

double inverse_residual(const Homeo& g, std::size_t samples, std::uint64_t seed) {
  const Space& s = g.space();
  const Homeo h = g.inverse();
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const LiftPoint p = s.canonical_lift(s.random_point(rng));
    worst = std::max(worst, lift_gap(s, g.lift(h.lift(p)), p));
    worst = std::max(worst, lift_gap(s, h.lift(g.lift(p)), p));
  }
  return worst;
}

bool injective_on_samples(const Homeo& g, std::size_t samples, std::uint64_t seed) {
  const Space& s = g.space();
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const BasePoint a = s.random_point(rng);
    const BasePoint b = s.random_point(rng);
    if (s.distance(a, b) < 1e-9) continue;
    if (s.distance(g(a), g(b)) == 0.0) return false;
  }
  return true;
}

}  // namespace undistort
