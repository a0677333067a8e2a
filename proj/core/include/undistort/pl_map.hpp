#pragma once

#include <string>
#include <vector>

#include "undistort/numbers.hpp"

namespace undistort {

// Degree-one piecewise-linear circle homeomorphism with rational data, stored
// as a lift F: R -> R with F(x+1) = F(x)+1.
//
// The lift is linear between consecutive nodes (at_i, value_i), with the
// periodic continuation (at_0 + 1, value_0 + 1) closing the last piece. In
// canonical form the nodes are exactly the breakpoints (slope changes), sorted
// with at_i in [0,1). A map without breakpoints is a translation and is stored
// as the single node (0, F(0)).
class PLCircleMap {
 public:
  struct Node {
    Rational at;
    Rational value;
    friend bool operator==(const Node&, const Node&) = default;
  };

  // Identity.
  PLCircleMap();

  // `breakpoints` strictly increasing in [0,1); `values` are the images modulo
  // 1 in the same cyclic order. The lift is chosen with value_0 in [0,1).
  static PLCircleMap from_breakpoints(const std::vector<Rational>& breakpoints,
                                      const std::vector<Rational>& values);
  // Nodes of a lift given directly (values already lifted).
  static PLCircleMap from_lift_nodes(std::vector<Node> nodes);
  static PLCircleMap translation(const Rational& shift);

  Rational operator()(const Rational& x) const;
  double operator()(double x) const;

  // (*this) o inner.
  PLCircleMap after(const PLCircleMap& inner) const;
  PLCircleMap inverse() const;
  // Lift shifted by `shift`: x -> F(x) + shift.
  PLCircleMap shifted(const Rational& shift) const;
  PLCircleMap power(long long n) const;

  bool is_translation() const { return nodes_.size() == 1 && nodes_[0].at == 0; }
  // F(0) - 0 for translations.
  const Rational& translation_amount() const { return nodes_.front().value; }

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  std::vector<Rational> breakpoints() const;
  Rational max_slope() const;
  Rational min_slope() const;

  // Canonical text of the underlying circle map: the lift is normalised so that
  // value_0 lies in [0,1), so lifts differing by an integer share a key.
  std::string key() const;

  friend bool operator==(const PLCircleMap&, const PLCircleMap&) = default;

 private:
  explicit PLCircleMap(std::vector<Node> nodes);
  void canonicalize();
  void check_monotone() const;
  Rational slope_after(std::size_t i) const;

  std::vector<Node> nodes_;
  // Double copies of the nodes for fast orbit evaluation.
  std::vector<double> at_d_;
  std::vector<double> value_d_;
};

}  // namespace undistort
