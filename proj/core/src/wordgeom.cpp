#include "undistort/wordgeom.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <unordered_map>

#include "undistort/cocycle.hpp"
#include "undistort/errors.hpp"
#include "undistort/parallel.hpp"

namespace undistort {

GenSet::GenSet(const std::vector<std::pair<std::string, Homeo>>& generators,
               std::size_t seminorm_resolution) {
  if (generators.empty()) throw PreconditionError("generating set is empty");
  const Space& space = generators.front().second.space();
  for (const auto& [name, map] : generators) {
    if (!(map.space() == space)) throw SpaceMismatchError("generators live on different spaces");
    const auto e = map.exact();
    if (!e) {
      throw UnsupportedFlavorError("generator " + name + " (" + map.describe() +
                                   ") has no exact normal form");
    }
    Generator g{name, map, *e, canonical_key(*e), seminorm(map, seminorm_resolution).value};
    const ExactElement inv = exact_inverse(*e);
    std::string inv_key = canonical_key(inv);
    const bool involution = inv_key == g.key;
    gens_.push_back(std::move(g));
    if (!involution) {
      const Homeo inv_map = Homeo::from_exact(space, inv);
      gens_.push_back({name + "^-1", inv_map, inv, std::move(inv_key),
                       seminorm(inv_map, seminorm_resolution).value});
    }
  }
  for (const auto& g : gens_) c_ = std::max(c_, g.seminorm);
}

std::string GenSet::spell(const std::vector<std::uint32_t>& word) const {
  if (word.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out += ".";
    out += gens_.at(word[i]).name;
  }
  return out;
}

std::size_t max_nodes_from_env() {
  if (const char* env = std::getenv("UNDISTORT_MAX_NODES")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultMaxNodes;
}

std::optional<std::size_t> BallResult::find(const std::string& key) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].key == key) return i;
  }
  return std::nullopt;
}

namespace {

// BFS up to `radius`; stops after the level on which `target` first appears.
BallResult bfs(const GenSet& s, std::uint32_t radius, std::size_t max_nodes,
               const std::string* target) {
  const std::size_t cap = max_nodes > 0 ? max_nodes : max_nodes_from_env();
  const auto& gens = s.generators();
  BallResult out;
  std::unordered_map<std::string, std::size_t> index;

  const ExactElement id = exact_power(gens.front().element, 0);
  out.nodes.push_back({canonical_key(id), id, 0, {}});
  index.emplace(out.nodes.front().key, 0);
  out.sphere_sizes.push_back(1);
  out.ball_sizes.push_back(1);
  if (target && *target == out.nodes.front().key) return out;

  std::vector<std::size_t> frontier{0};
  for (std::uint32_t r = 1; r <= radius && !frontier.empty(); ++r) {
    struct Product {
      std::string key;
      ExactElement element;
    };
    std::vector<std::vector<Product>> products(frontier.size());
    parallel_for(
        frontier.size(),
        [&](std::size_t i) {
          const ExactElement& base = out.nodes[frontier[i]].element;
          auto& row = products[i];
          row.reserve(gens.size());
          for (const auto& g : gens) {
            ExactElement e = exact_compose(base, g.element);
            row.push_back({canonical_key(e), std::move(e)});
          }
        },
        16);

    std::vector<std::size_t> next;
    bool hit = false;
    for (std::size_t i = 0; i < frontier.size() && !out.truncated; ++i) {
      for (std::uint32_t j = 0; j < gens.size(); ++j) {
        auto& p = products[i][j];
        if (index.count(p.key)) continue;
        if (out.nodes.size() >= cap) {
          out.truncated = true;
          break;
        }
        BallNode node{p.key, std::move(p.element), r, out.nodes[frontier[i]].witness};
        node.witness.push_back(j);
        if (target && p.key == *target) hit = true;
        index.emplace(p.key, out.nodes.size());
        next.push_back(out.nodes.size());
        out.nodes.push_back(std::move(node));
      }
    }
    out.radius = r;
    out.sphere_sizes.push_back(next.size());
    out.ball_sizes.push_back(out.nodes.size());
    frontier = std::move(next);
    if (out.truncated || hit) break;
  }
  if (!out.truncated) out.radius = radius;
  if (target && out.find(*target)) out.radius = out.nodes[*out.find(*target)].length;
  return out;
}

}  // namespace

BallResult ball(const GenSet& s, std::uint32_t radius, std::size_t max_nodes) {
  BallResult out = bfs(s, radius, max_nodes, nullptr);
  // A ball that stopped growing is still reported up to the requested radius.
  while (!out.truncated && out.sphere_sizes.size() <= radius) {
    out.sphere_sizes.push_back(0);
    out.ball_sizes.push_back(out.nodes.size());
  }
  return out;
}

WordNorm word_norm(const Homeo& g, const GenSet& s, std::uint32_t max_radius,
                   std::size_t max_nodes) {
  WordNorm out;
  out.seminorm = seminorm(g).value;
  out.lower_bound = s.c() > 0.0 ? out.seminorm / s.c() : 0.0;
  const auto e = g.exact();
  if (!e) return out;
  const std::string key = canonical_key(*e);
  const BallResult b = bfs(s, max_radius, max_nodes, &key);
  out.truncated = b.truncated;
  if (const auto i = b.find(key)) {
    out.exact = b.nodes[*i].length;
    out.witness = b.nodes[*i].witness;
  }
  return out;
}

std::vector<Rational> exact_homomorphisms(const ExactElement& e) {
  auto coefficients = [](const ExactAngle& a, bool with_rational) {
    std::vector<Rational> out;
    if (with_rational) out.push_back(a.rational_part());
    for (std::size_t i = 0; i < kIrrationalCount; ++i) {
      out.push_back(a.coefficient(static_cast<Irrational>(i)));
    }
    return out;
  };
  if (const auto* c = std::get_if<CircleElement>(&e)) return coefficients(c->shift, false);
  if (const auto* a = std::get_if<AnnulusTwistElement>(&e)) {
    return coefficients(a->rho1 - a->rho0, true);
  }
  if (const auto* t = std::get_if<TorusShearElement>(&e)) return {Rational(t->n)};
  if (const auto* t = std::get_if<TorusTwistElement>(&e)) return {t->amplitude};
  return {std::get<GradientElement>(e).time};
}

TranslationLength translation_length(const Homeo& g, const GenSet& s, std::int64_t max_power,
                                     std::uint32_t max_radius,
                                     const std::vector<Certificate>& certificates,
                                     std::size_t max_nodes) {
  TranslationLength out;
  for (const auto& cert : certificates) {
    if (!cert.undistorted()) continue;
    double tau = cert.tau_lower_bound;
    if (!cert.c) tau = s.c() > 0.0 ? tau / s.c() : 0.0;
    out.certificate_lower = std::max(out.certificate_lower, tau);
  }

  const auto e = g.exact();
  if (!e) return out;

  // Additive invariants; all generators must share g's family for them to apply.
  const auto phi_g = exact_homomorphisms(*e);
  std::vector<double> gen_max(phi_g.size(), 0.0);
  bool same_family = true;
  for (const auto& gen : s.generators()) {
    if (gen.element.index() != e->index()) {
      same_family = false;
      break;
    }
    const auto phi = exact_homomorphisms(gen.element);
    for (std::size_t i = 0; i < phi.size(); ++i) {
      gen_max[i] = std::max(gen_max[i], std::abs(to_double(phi[i])));
    }
  }
  if (same_family) {
    for (std::size_t i = 0; i < phi_g.size(); ++i) {
      if (gen_max[i] > 0.0) {
        out.homomorphism_lower =
            std::max(out.homomorphism_lower, std::abs(to_double(phi_g[i])) / gen_max[i]);
      }
    }
  }

  const BallResult b = bfs(s, max_radius, max_nodes, nullptr);
  out.truncated = b.truncated;
  std::unordered_map<std::string, std::uint32_t> lengths;
  for (const auto& node : b.nodes) lengths.emplace(node.key, node.length);
  ExactElement gn = *e;
  for (std::int64_t n = 1; n <= max_power; ++n) {
    if (n > 1) gn = exact_compose(gn, *e);
    const auto it = lengths.find(canonical_key(gn));
    if (it == lengths.end()) continue;
    out.power_norms.emplace_back(n, it->second);
    const double ratio = static_cast<double>(it->second) / static_cast<double>(n);
    out.upper = out.upper ? std::min(*out.upper, ratio) : ratio;
  }
  return out;
}

}  // namespace undistort
