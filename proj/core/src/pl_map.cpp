#include "undistort/pl_map.hpp"

#include <algorithm>
#include <cmath>

#include "undistort/errors.hpp"

namespace undistort {

PLCircleMap::PLCircleMap() : PLCircleMap(std::vector<Node>{{Rational(0), Rational(0)}}) {}

PLCircleMap::PLCircleMap(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw PreconditionError("PL map needs at least one node");
  std::sort(nodes_.begin(), nodes_.end(), [](const Node& a, const Node& b) { return a.at < b.at; });
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].at < 0 || nodes_[i].at >= 1) {
      throw PreconditionError("PL breakpoints must lie in [0,1)");
    }
    if (i > 0 && nodes_[i].at == nodes_[i - 1].at) {
      throw PreconditionError("PL breakpoints must be distinct");
    }
  }
  check_monotone();
  canonicalize();
}

PLCircleMap PLCircleMap::from_breakpoints(const std::vector<Rational>& breakpoints,
                                          const std::vector<Rational>& values) {
  if (breakpoints.size() != values.size() || breakpoints.empty()) {
    throw PreconditionError("PL map needs matching, non-empty breakpoints and values");
  }
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i - 1] < breakpoints[i])) {
      throw PreconditionError("PL breakpoints must be strictly increasing");
    }
  }
  std::vector<Node> nodes;
  nodes.reserve(values.size());
  Rational previous = frac(values[0]);
  nodes.push_back({breakpoints[0], previous});
  for (std::size_t i = 1; i < values.size(); ++i) {
    Rational v = frac(values[i]) + Rational(floor(previous));
    if (v <= previous) v += 1;
    nodes.push_back({breakpoints[i], v});
    previous = v;
  }
  if (!(nodes.back().value < nodes.front().value + 1)) {
    throw PreconditionError("PL values are not in the cyclic order of the breakpoints");
  }
  return PLCircleMap(std::move(nodes));
}

PLCircleMap PLCircleMap::from_lift_nodes(std::vector<Node> nodes) {
  return PLCircleMap(std::move(nodes));
}

PLCircleMap PLCircleMap::translation(const Rational& shift) {
  return PLCircleMap(std::vector<Node>{{Rational(0), shift}});
}

void PLCircleMap::check_monotone() const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (slope_after(i) <= 0) throw PreconditionError("PL lift must be strictly increasing");
  }
}

Rational PLCircleMap::slope_after(std::size_t i) const {
  const std::size_t j = (i + 1) % nodes_.size();
  Rational dx = nodes_[j].at - nodes_[i].at;
  Rational dy = nodes_[j].value - nodes_[i].value;
  if (j <= i) {
    dx += 1;
    dy += 1;
  }
  return dy / dx;
}

void PLCircleMap::canonicalize() {
  bool changed = true;
  while (changed && nodes_.size() > 1) {
    changed = false;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const std::size_t prev = (i + nodes_.size() - 1) % nodes_.size();
      if (slope_after(prev) == slope_after(i)) {
        nodes_.erase(nodes_.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  if (nodes_.size() == 1) {
    // Slope one everywhere: a translation, pinned at 0.
    const Rational shift = nodes_[0].value - nodes_[0].at;
    nodes_ = {{Rational(0), shift}};
  }
  at_d_.clear();
  value_d_.clear();
  for (const auto& n : nodes_) {
    at_d_.push_back(to_double(n.at));
    value_d_.push_back(to_double(n.value));
  }
}

Rational PLCircleMap::operator()(const Rational& x) const {
  const BigInt m = floor(x);
  const Rational f = x - Rational(m);
  Rational x0, y0, x1, y1;
  if (f < nodes_.front().at) {
    x0 = nodes_.back().at - 1;
    y0 = nodes_.back().value - 1;
    x1 = nodes_.front().at;
    y1 = nodes_.front().value;
  } else if (f >= nodes_.back().at) {
    x0 = nodes_.back().at;
    y0 = nodes_.back().value;
    x1 = nodes_.front().at + 1;
    y1 = nodes_.front().value + 1;
  } else {
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), f,
                               [](const Rational& v, const Node& n) { return v < n.at; });
    const Node& right = *it;
    const Node& left = *(it - 1);
    x0 = left.at;
    y0 = left.value;
    x1 = right.at;
    y1 = right.value;
  }
  return Rational(m) + y0 + (y1 - y0) * (f - x0) / (x1 - x0);
}

double PLCircleMap::operator()(double x) const {
  const double m = std::floor(x);
  const double f = x - m;
  const std::size_t k = at_d_.size();
  double x0, y0, x1, y1;
  if (f < at_d_.front()) {
    x0 = at_d_[k - 1] - 1.0;
    y0 = value_d_[k - 1] - 1.0;
    x1 = at_d_[0];
    y1 = value_d_[0];
  } else if (f >= at_d_[k - 1]) {
    x0 = at_d_[k - 1];
    y0 = value_d_[k - 1];
    x1 = at_d_[0] + 1.0;
    y1 = value_d_[0] + 1.0;
  } else {
    const auto it = std::upper_bound(at_d_.begin(), at_d_.end(), f);
    const auto j = static_cast<std::size_t>(it - at_d_.begin());
    x0 = at_d_[j - 1];
    y0 = value_d_[j - 1];
    x1 = at_d_[j];
    y1 = value_d_[j];
  }
  return m + y0 + (y1 - y0) * (f - x0) / (x1 - x0);
}

PLCircleMap PLCircleMap::after(const PLCircleMap& inner) const {
  // Breakpoints of the composite: those of `inner` and the preimages under
  // `inner` of those of *this.
  const PLCircleMap inner_inverse = inner.inverse();
  std::vector<Rational> candidates;
  candidates.reserve(nodes_.size() + inner.nodes_.size());
  for (const auto& n : inner.nodes_) candidates.push_back(n.at);
  for (const auto& n : nodes_) candidates.push_back(frac(inner_inverse(n.at)));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::vector<Node> out;
  out.reserve(candidates.size());
  for (auto& c : candidates) {
    Rational value = (*this)(inner(c));
    out.push_back({std::move(c), std::move(value)});
  }
  return PLCircleMap(std::move(out));
}

PLCircleMap PLCircleMap::inverse() const {
  std::vector<Node> out;
  out.reserve(nodes_.size());
  for (const auto& n : nodes_) {
    const Rational m(floor(n.value));
    out.push_back({n.value - m, n.at - m});
  }
  return PLCircleMap(std::move(out));
}

PLCircleMap PLCircleMap::shifted(const Rational& shift) const {
  std::vector<Node> out = nodes_;
  for (auto& n : out) n.value += shift;
  return PLCircleMap(std::move(out));
}

PLCircleMap PLCircleMap::power(long long n) const {
  PLCircleMap base = n < 0 ? inverse() : *this;
  unsigned long long e = n < 0 ? static_cast<unsigned long long>(-(n + 1)) + 1ULL
                               : static_cast<unsigned long long>(n);
  PLCircleMap result;
  while (e > 0) {
    if (e & 1ULL) result = result.after(base);
    e >>= 1ULL;
    if (e > 0) base = base.after(base);
  }
  return result;
}

std::vector<Rational> PLCircleMap::breakpoints() const {
  if (is_translation()) return {};
  std::vector<Rational> out;
  out.reserve(nodes_.size());
  for (const auto& n : nodes_) out.push_back(n.at);
  return out;
}

Rational PLCircleMap::max_slope() const {
  Rational best = slope_after(0);
  for (std::size_t i = 1; i < nodes_.size(); ++i) best = std::max(best, slope_after(i));
  return best;
}

Rational PLCircleMap::min_slope() const {
  Rational best = slope_after(0);
  for (std::size_t i = 1; i < nodes_.size(); ++i) best = std::min(best, slope_after(i));
  return best;
}

std::string PLCircleMap::key() const {
  const Rational m(floor(nodes_.front().value));
  std::string out = "pl[";
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (i) out += ";";
    out += to_string(nodes_[i].at) + ">" + to_string(nodes_[i].value - m);
  }
  return out + "]";
}

}  // namespace undistort
