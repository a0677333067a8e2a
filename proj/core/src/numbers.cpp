#include "undistort/numbers.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace undistort {

double to_double(const Rational& q) { return q.convert_to<double>(); }

BigInt floor(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  BigInt quotient = num / den;
  if (num < 0 && quotient * den != num) --quotient;
  return quotient;
}

Rational frac(const Rational& q) { return q - Rational(floor(q)); }

std::string to_string(const Rational& q) {
  if (boost::multiprecision::denominator(q) == 1) {
    return boost::multiprecision::numerator(q).str();
  }
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

BigInt parse_integer(std::string_view s) {
  s = trim(s);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw std::invalid_argument("empty integer");
  BigInt value = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("bad digit in '" + std::string(s) + "'");
    }
    value = value * 10 + (c - '0');
  }
  return negative ? BigInt(-value) : value;
}

Rational parse_decimal(std::string_view s) {
  s = trim(s);
  const auto dot = s.find('.');
  if (dot == std::string_view::npos) return Rational(parse_integer(s));
  std::string_view whole = s.substr(0, dot);
  std::string_view fraction = s.substr(dot + 1);
  bool negative = !whole.empty() && whole.front() == '-';
  if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) whole.remove_prefix(1);
  if (whole.empty() && fraction.empty()) throw std::invalid_argument("bare '.'");
  BigInt digits = 0;
  BigInt scale = 1;
  for (char c : whole) {
    if (!std::isdigit(static_cast<unsigned char>(c))) throw std::invalid_argument("bad decimal");
    digits = digits * 10 + (c - '0');
  }
  for (char c : fraction) {
    if (!std::isdigit(static_cast<unsigned char>(c))) throw std::invalid_argument("bad decimal");
    digits = digits * 10 + (c - '0');
    scale *= 10;
  }
  Rational value(digits, scale);
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw std::invalid_argument("empty number");
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  const Rational num = parse_decimal(text.substr(0, slash));
  const Rational den = parse_decimal(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator");
  return num / den;
}

std::string_view irrational_name(Irrational s) {
  switch (s) {
    case Irrational::Sqrt2: return "sqrt2";
    case Irrational::Sqrt3: return "sqrt3";
    case Irrational::Sqrt5: return "sqrt5";
    case Irrational::Pi: return "pi";
  }
  return "?";
}

double irrational_value(Irrational s) {
  switch (s) {
    case Irrational::Sqrt2: return std::numbers::sqrt2;
    case Irrational::Sqrt3: return std::numbers::sqrt3;
    case Irrational::Sqrt5: return 2.23606797749978969640917366873127623544;
    case Irrational::Pi: return std::numbers::pi;
  }
  return 0.0;
}

ExactAngle::ExactAngle(Rational rational) : rational_(std::move(rational)) {}

ExactAngle ExactAngle::symbol(Irrational s, Rational coefficient) {
  ExactAngle a;
  a.coefficients_[static_cast<std::size_t>(s)] = std::move(coefficient);
  return a;
}

ExactAngle ExactAngle::parse(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw std::invalid_argument("empty angle");
  ExactAngle total;
  std::size_t pos = 0;
  int sign = 1;
  if (text[0] == '-' || text[0] == '+') {
    sign = text[0] == '-' ? -1 : 1;
    pos = 1;
  }
  while (pos <= text.size()) {
    std::size_t next = text.find_first_of("+-", pos);
    // A sign right after '*' or at the start of a term belongs to the term.
    while (next != std::string_view::npos && next > 0 &&
           (text[next - 1] == '*' || text[next - 1] == '/')) {
      next = text.find_first_of("+-", next + 1);
    }
    std::string_view term = trim(text.substr(pos, next == std::string_view::npos
                                                      ? std::string_view::npos
                                                      : next - pos));
    if (term.empty()) throw std::invalid_argument("empty term in '" + std::string(text) + "'");

    ExactAngle piece;
    bool is_symbol = false;
    for (std::size_t i = 0; i < kIrrationalCount; ++i) {
      const auto sym = static_cast<Irrational>(i);
      const std::string_view name = irrational_name(sym);
      if (term.size() >= name.size() && term.substr(term.size() - name.size()) == name) {
        std::string_view coef = trim(term.substr(0, term.size() - name.size()));
        Rational c = 1;
        if (!coef.empty()) {
          if (coef.back() != '*') throw std::invalid_argument("expected '*' before symbol");
          coef.remove_suffix(1);
          c = parse_rational(coef);
        }
        piece = symbol(sym, c);
        is_symbol = true;
        break;
      }
    }
    if (!is_symbol) piece = ExactAngle(parse_rational(term));
    total += sign == 1 ? piece : -piece;

    if (next == std::string_view::npos) break;
    sign = text[next] == '-' ? -1 : 1;
    pos = next + 1;
  }
  return total;
}

bool ExactAngle::is_rational() const {
  for (const auto& c : coefficients_) {
    if (c != 0) return false;
  }
  return true;
}

bool ExactAngle::is_zero() const { return rational_ == 0 && is_rational(); }

double ExactAngle::value() const {
  double v = to_double(rational_);
  for (std::size_t i = 0; i < kIrrationalCount; ++i) {
    if (coefficients_[i] != 0) {
      v += to_double(coefficients_[i]) * irrational_value(static_cast<Irrational>(i));
    }
  }
  return v;
}

ExactAngle ExactAngle::operator-() const {
  ExactAngle out = *this;
  out *= Rational(-1);
  return out;
}

ExactAngle& ExactAngle::operator+=(const ExactAngle& other) {
  rational_ += other.rational_;
  for (std::size_t i = 0; i < kIrrationalCount; ++i) coefficients_[i] += other.coefficients_[i];
  return *this;
}

ExactAngle& ExactAngle::operator-=(const ExactAngle& other) { return *this += -other; }

ExactAngle& ExactAngle::operator*=(const Rational& k) {
  rational_ *= k;
  for (auto& c : coefficients_) c *= k;
  return *this;
}

ExactAngle ExactAngle::irrational_part() const {
  ExactAngle out = *this;
  out.rational_ = 0;
  return out;
}

namespace {

std::string render(const Rational& rational, const std::array<Rational, kIrrationalCount>& coefs) {
  std::string out = undistort::to_string(rational);
  for (std::size_t i = 0; i < kIrrationalCount; ++i) {
    if (coefs[i] == 0) continue;
    out += coefs[i] > 0 ? "+" : "-";
    const Rational mag = coefs[i] > 0 ? coefs[i] : Rational(-coefs[i]);
    if (mag != 1) out += undistort::to_string(mag) + "*";
    out += irrational_name(static_cast<Irrational>(i));
  }
  return out;
}

}  // namespace

std::string ExactAngle::to_string() const { return render(rational_, coefficients_); }

std::string ExactAngle::key_mod_one() const { return render(frac(rational_), coefficients_); }

}  // namespace undistort
