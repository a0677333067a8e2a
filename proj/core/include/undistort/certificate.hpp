#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace undistort {

enum class Verdict : std::uint8_t { Undistorted, Inconclusive };
enum class Mechanism : std::uint8_t { TwoMeasures, TwoRotationPoints, TwoFixedPoints };

std::string_view to_string(Verdict v);
std::string_view to_string(Mechanism m);

struct Certificate {
  Verdict verdict = Verdict::Inconclusive;
  Mechanism mechanism = Mechanism::TwoMeasures;
  // The quantity that separates the two witnesses: a Nielsen gap, |q^| or
  // |<a, g gamma - gamma>|.
  double invariant = 0.0;
  // Max generator seminorm when a generating set was supplied.
  std::optional<double> c;
  // invariant / C, or invariant in seminorm units when C is absent; 0 unless
  // Undistorted.
  double tau_lower_bound = 0.0;
  std::string reason;
  std::vector<std::pair<std::string, std::string>> evidence;

  bool undistorted() const { return verdict == Verdict::Undistorted; }
  void add(std::string key, std::string value) {
    evidence.emplace_back(std::move(key), std::move(value));
  }
  // Sets tau from `invariant` and `c`.
  void settle(Verdict v, std::string why);
};

}  // namespace undistort
