#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace undistort {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

double to_double(const Rational& q);
// Largest integer not exceeding q.
BigInt floor(const Rational& q);
// q - floor(q), always in [0, 1).
Rational frac(const Rational& q);
std::string to_string(const Rational& q);

// Accepts "p/q", integers and plain decimals ("0.125", "-3"). Throws
// std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

// Irrational constants that can appear in an exact angle. 1 and these values
// are linearly independent over Q, so equality of exact angles reduces to
// equality of coefficient vectors.
enum class Irrational : std::uint8_t { Sqrt2, Sqrt3, Sqrt5, Pi };
inline constexpr std::size_t kIrrationalCount = 4;

std::string_view irrational_name(Irrational s);
double irrational_value(Irrational s);

// An exact real of the form q0 + q1*sqrt2 + q2*sqrt3 + q3*sqrt5 + q4*pi with
// rational coefficients. Used for rotation amounts so that group elements
// built from irrational rotations still have exact canonical forms.
class ExactAngle {
 public:
  ExactAngle() = default;
  ExactAngle(Rational rational);  // NOLINT(google-explicit-constructor)

  static ExactAngle symbol(Irrational s, Rational coefficient = 1);

  // Grammar: sum of terms separated by '+'/'-'; a term is a rational, a
  // symbol name (sqrt2, sqrt3, sqrt5, pi) or "<rational>*<symbol>".
  static ExactAngle parse(std::string_view text);

  const Rational& rational_part() const noexcept { return rational_; }
  const Rational& coefficient(Irrational s) const noexcept {
    return coefficients_[static_cast<std::size_t>(s)];
  }
  bool is_rational() const;
  bool is_zero() const;

  double value() const;

  ExactAngle operator-() const;
  ExactAngle& operator+=(const ExactAngle& other);
  ExactAngle& operator-=(const ExactAngle& other);
  ExactAngle& operator*=(const Rational& k);
  friend ExactAngle operator+(ExactAngle a, const ExactAngle& b) { return a += b; }
  friend ExactAngle operator-(ExactAngle a, const ExactAngle& b) { return a -= b; }
  friend ExactAngle operator*(ExactAngle a, const Rational& k) { return a *= k; }
  friend bool operator==(const ExactAngle&, const ExactAngle&) = default;

  // Irrational part only (rational part dropped).
  ExactAngle irrational_part() const;

  std::string to_string() const;
  // Same text as to_string() but with the rational part reduced modulo 1.
  std::string key_mod_one() const;

 private:
  Rational rational_;
  std::array<Rational, kIrrationalCount> coefficients_{};
};

}  // namespace undistort
