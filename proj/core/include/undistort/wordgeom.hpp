#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "undistort/certificate.hpp"
#include "undistort/homeo.hpp"

namespace undistort {

// A symmetric generating set: every generator is followed by its inverse
// (omitted when the generator is an involution).
class GenSet {
 public:
  struct Generator {
    std::string name;
    Homeo map;
    ExactElement element;
    std::string key;
    double seminorm = 0.0;
  };

  // Throws UnsupportedFlavorError for generators without an exact form.
  GenSet(const std::vector<std::pair<std::string, Homeo>>& generators,
         std::size_t seminorm_resolution = 256);

  const std::vector<Generator>& generators() const noexcept { return gens_; }
  std::size_t size() const noexcept { return gens_.size(); }
  const Space& space() const { return gens_.front().map.space(); }
  // max over generators of their seminorm.
  double c() const noexcept { return c_; }
  // Word in generator indices to a readable string ("a.b^-1"); "e" when empty.
  std::string spell(const std::vector<std::uint32_t>& word) const;

 private:
  std::vector<Generator> gens_;
  double c_ = 0.0;
};

struct BallNode {
  std::string key;
  ExactElement element;
  std::uint32_t length = 0;
  std::vector<std::uint32_t> witness;
};

inline constexpr std::size_t kDefaultMaxNodes = 10'000'000;
// UNDISTORT_MAX_NODES when set to a positive integer, else the default.
std::size_t max_nodes_from_env();

struct BallResult {
  std::vector<BallNode> nodes;  // BFS order: by length, then lex-least witness
  // sphere_sizes[r] = number of elements of word length exactly r.
  std::vector<std::size_t> sphere_sizes;
  std::vector<std::size_t> ball_sizes;
  std::uint32_t radius = 0;
  bool truncated = false;

  // Index of the node with this canonical key, if present.
  std::optional<std::size_t> find(const std::string& key) const;
};

// Cayley ball of radius r. Words multiply on the right: witness s1 s2 ... sk
// is the map s1 o s2 o ... o sk.
BallResult ball(const GenSet& s, std::uint32_t radius, std::size_t max_nodes = 0);

struct WordNorm {
  std::optional<std::uint32_t> exact;
  std::optional<std::vector<std::uint32_t>> witness;
  double seminorm = 0.0;
  // seminorm / C; 0 when C vanishes.
  double lower_bound = 0.0;
  bool truncated = false;
};

WordNorm word_norm(const Homeo& g, const GenSet& s, std::uint32_t max_radius,
                   std::size_t max_nodes = 0);

struct TranslationLength {
  // min over n of |g^n| / n for exact norms found.
  std::optional<double> upper;
  std::vector<std::pair<std::int64_t, std::uint32_t>> power_norms;
  // Best certificate tau (already divided by C).
  double certificate_lower = 0.0;
  // Lower bound from additive invariants of the exact normal forms.
  double homomorphism_lower = 0.0;
  double lower() const { return std::max(certificate_lower, homomorphism_lower); }
  bool truncated = false;
};

// Additive invariants of an exact element: composing adds them, so
// |phi(g^n)| <= |g^n| max_s |phi(s)| for each coordinate phi.
std::vector<Rational> exact_homomorphisms(const ExactElement& e);

TranslationLength translation_length(const Homeo& g, const GenSet& s, std::int64_t max_power,
                                     std::uint32_t max_radius,
                                     const std::vector<Certificate>& certificates = {},
                                     std::size_t max_nodes = 0);

}  // namespace undistort
