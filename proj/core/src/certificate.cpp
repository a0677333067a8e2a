#include "undistort/certificate.hpp"

#include <cmath>

#include "undistort/errors.hpp"

namespace undistort {

std::string_view to_string(Verdict v) {
  return v == Verdict::Undistorted ? "undistorted" : "inconclusive";
}

std::string_view to_string(Mechanism m) {
  switch (m) {
    case Mechanism::TwoMeasures: return "two-measures";
    case Mechanism::TwoRotationPoints: return "two-rotation-points";
    case Mechanism::TwoFixedPoints: return "two-fixed-points";
  }
  return "?";
}

void Certificate::settle(Verdict v, std::string why) {
  verdict = v;
  reason = std::move(why);
  tau_lower_bound = 0.0;
  if (verdict != Verdict::Undistorted) return;
  if (c) {
    if (!(*c > 0.0)) throw PreconditionError("generator seminorm bound C must be positive");
    tau_lower_bound = std::abs(invariant) / *c;
  } else {
    tau_lower_bound = std::abs(invariant);
  }
}

}  // namespace undistort
