// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <sys/resource.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <memory>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "undistort/undistort.hpp"

namespace {

using namespace undistort;

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  std::string name;
  double time_limit = 0.0;  // seconds, 0 for none
  std::function<Outcome()> run;
};

// Collects the worst value of a family of checks against a tolerance.
class Worst {
 public:
  explicit Worst(double tolerance) : tolerance_(tolerance) {}
  void see(double err) { worst_ = std::max(worst_, std::isnan(err) ? kInfinity : err); }
  bool ok() const { return worst_ <= tolerance_; }
  double value() const { return worst_; }

 private:
  double tolerance_;
  double worst_ = 0.0;
};

Homeo half_twist() { return Homeo::annulus_twist(ExactAngle(Rational(0)), ExactAngle(Rational(1, 2))); }

Outcome shear_exactness() {
  const Homeo g = Homeo::torus_shear();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> t_dist(0.0, 1.0);
  std::uniform_real_distribution<double> x_dist(-30.0, 30.0);
  Worst k_err(1e-12);
  Worst g_err(1e-12);
  Worst inf_err(1e-12);
  std::vector<Homeo> powers;
  for (std::int64_t n = -20; n <= 20; ++n) powers.push_back(g.power(n));
  const auto at = [&](std::int64_t n) -> const Homeo& { return powers[static_cast<std::size_t>(n + 20)]; };
  for (int i = 0; i < 100; ++i) {
    const BasePoint p{t_dist(rng), x_dist(rng)};
    for (std::int64_t n = -20; n <= 20; ++n) {
      k_err.see(std::abs(k_eval(at(n), p) - oracle::shear_k(n, p.v)));
    }
    const BasePoint pole{p.u, kInfinity};
    for (std::int64_t m = -20; m <= 20; ++m) {
      for (std::int64_t n = -20; n <= 20; ++n) inf_err.see(std::abs(g_cocycle(pole, at(m), at(n))));
    }
  }
  for (std::int64_t m = -20; m <= 20; ++m) {
    for (std::int64_t n = -20; n <= 20; ++n) {
      g_err.see(std::abs(g_cocycle({0.0, 0.0}, at(m), at(n)) - oracle::shear_g_origin(m, n)));
    }
  }
  return {k_err.ok() && g_err.ok() && inf_err.ok(),
          fmt::format("max |K err| {:.3g}, max |G err| {:.3g}, max |G at pole| {:.3g}", k_err.value(),
                      g_err.value(), inf_err.value())};
}

Outcome cocycle_identity() {
  std::mt19937_64 rng(11);
  const auto spaces = gen::all_spaces();
  Worst worst(1e-9);
  std::string culprit;
  for (int i = 0; i < 200; ++i) {
    const Space& s = spaces[static_cast<std::size_t>(i) % spaces.size()];
    const Homeo g = i % 17 == 0 ? Homeo::identity(s) : gen::random_family_member(rng, s);
    const Homeo h = gen::random_family_member(rng, s);
    const double r = k_identity_residual(g, h, 1000, static_cast<std::uint64_t>(i) + 1);
    if (r > worst.value()) culprit = g.describe() + " , " + h.describe();
    worst.see(r);
  }
  return {worst.ok(), fmt::format("200 pairs, max residual {:.3g} ({})", worst.value(), culprit)};
}

Outcome roundtrip() {
  Worst path_err(1e-9);
  Worst loop_err(1e-9);
  std::size_t class_mismatch = 0;
  const auto spaces = gen::all_spaces();
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    const Space& s = spaces[i];
    std::mt19937_64 rng(300 + i);
    const std::array<PathIntegralCocycle, 2> cocycles{
        PathIntegralCocycle::standard(s),
        PathIntegralCocycle::linear(
            s, s.pairing(), [](const BasePoint& b) { return 0.2 * std::cos(6.283185307179586 * b.u); }, 1.3)};
    for (const auto& c : cocycles) {
      const Potential p = potential_from_cocycle(s, c, {{0.0, 0.0}, 0.0});
      const PathIntegralCocycle back = cocycle_from_potential(s, p);
      for (int k = 0; k < 100; ++k) {
        const Path path = gen::random_polyline(s, rng);
        path_err.see(std::abs(back.integrate(path) - c.integrate(path)));
      }
      for (int k = 0; k < 100; ++k) {
        const Path loop = gen::random_polyline(s, rng, true);
        const double v = c.integrate(loop);
        loop_err.see(std::abs(v - std::round(v)));
        if (std::llround(v) != s.pair(gen::loop_class(s, loop))) ++class_mismatch;
      }
    }
  }
  return {path_err.ok() && loop_err.ok() && class_mismatch == 0,
          fmt::format("{} spaces, max roundtrip err {:.3g}, max loop non-integrality {:.3g}, class mismatches {}",
                      spaces.size(), path_err.value(), loop_err.value(), class_mismatch)};
}

Outcome defect_bound() {
  std::mt19937_64 rng(23);
  const auto spaces = gen::all_spaces();
  double worst_excess = -kInfinity;
  int failures = 0;
  for (int i = 0; i < 50; ++i) {
    const Space& s = spaces[static_cast<std::size_t>(i) % spaces.size()];
    const Homeo g = gen::random_family_member(rng, s);
    const DefectEstimate d = defect_estimate(s.random_point(rng), s.random_point(rng), g, 16);
    worst_excess = std::max(worst_excess, d.sampled - d.bound());
    if (!d.holds(1e-9)) ++failures;
  }
  return {failures == 0, fmt::format("50 configurations, N = 16, max(sampled - bound) {:.3g}", worst_excess)};
}

Outcome rotation_numbers() {
  std::vector<std::string> notes;
  bool ok = true;

  const Homeo grad = Homeo::gradient_time_one();
  const Homeo shear = Homeo::torus_shear();
  const std::vector<std::pair<BasePoint, const Homeo*>> fixed{
      {{0.0, 0.0}, &grad}, {{0.5, 0.0}, &grad}, {{0.0, kInfinity}, &shear}, {{0.4, kInfinity}, &shear}};
  for (const auto& [x, g] : fixed) {
    const RotationEstimate e = local_rotation_number(x, *g, default_budget(*g));
    ok = ok && e.rot == 0.0;
  }
  notes.push_back(fmt::format("{} fixed points", fixed.size()));

  const ExactAngle rho_exact = ExactAngle::symbol(Irrational::Sqrt2) - ExactAngle(Rational(1));
  const double rho = std::sqrt(2.0) - 1.0;
  const RotationEstimate rigid =
      local_rotation_number({0.3, 0.0}, Homeo::rigid_rotation(rho_exact), 1'000'000);
  ok = ok && std::abs(rigid.r + rho) <= 1e-12 && rigid.residual_band <= 1e-9;
  notes.push_back(fmt::format("rigid r + rho {:.3g}, band {:.3g}", rigid.r + rho, rigid.residual_band));

  const PLCircleMap h_map =
      PLCircleMap::from_lift_nodes({{Rational(0), Rational(0)}, {Rational(1, 2), Rational(1, 4)}});
  const Homeo conj = compose(Homeo::pl(h_map.inverse()),
                             compose(Homeo::rigid_rotation(ExactAngle(Rational(2, 5))), Homeo::pl(h_map)));
  const oracle::PLLift h{{0.0, 0.5}, {0.0, 0.25}};
  const oracle::PLLift hinv{{0.0, 0.25}, {0.0, 0.5}};
  const auto lift = [&](double x) { return hinv(h(x) + 0.4); };
  double worst = 0.0;
  for (double x0 : {0.0, 0.2, 0.7}) {
    const double expected = oracle::classical_rotation(lift, x0, 10000);
    const RotationEstimate e = local_rotation_number({x0, 0.0}, conj, 10000);
    worst = std::max(worst, std::abs(e.classical - expected));
  }
  ok = ok && worst <= 1e-3;
  notes.push_back(fmt::format("PL conjugate of 2/5 max err {:.3g}", worst));

  std::string detail;
  for (const auto& n : notes) detail += (detail.empty() ? "" : "; ") + n;
  return {ok, detail};
}

std::string evidence_value(const Certificate& c, const std::string& key) {
  for (const auto& [k, v] : c.evidence) {
    if (k == key) return v;
  }
  return {};
}

Outcome certificates() {
  const Homeo t = half_twist();
  const Space a = Space::annulus();
  const double c = seminorm(t).value;
  const Certificate by_points = certify_two_rotation_points({0.0, 0.0}, {0.0, 1.0}, t, 100000, c);
  const Certificate by_measures = certify_two_measures(Measure::circle(a, named_circle(a, "boundary:0")),
                                                       Measure::circle(a, named_circle(a, "boundary:1")), t, c);
  const Certificate shear =
      certify_two_rotation_points({0.0, 0.0}, {0.0, kInfinity}, Homeo::torus_shear(), 100000);
  const bool ok = std::abs(c - 0.5) <= 1e-12 && by_points.verdict == Verdict::Undistorted &&
                  by_points.mechanism == Mechanism::TwoRotationPoints &&
                  std::abs(by_points.tau_lower_bound - 1.0) <= 1e-6 &&
                  by_measures.verdict == Verdict::Undistorted && by_measures.mechanism == Mechanism::TwoMeasures &&
                  std::abs(by_measures.tau_lower_bound - 1.0) <= 1e-6 && shear.verdict == Verdict::Inconclusive &&
                  evidence_value(shear, "verdict_x") == to_string(BoundedVerdict::UnboundedSuspected);
  return {ok, fmt::format("C {:.6g}; rotation points {} tau {:.9g}; measures {} tau {:.9g}; shear {} ({})", c,
                          to_string(by_points.verdict), by_points.tau_lower_bound, to_string(by_measures.verdict),
                          by_measures.tau_lower_bound, to_string(shear.verdict), evidence_value(shear, "verdict_x"))};
}

long peak_rss_kib() {
  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  return usage.ru_maxrss;
}

Outcome word_geometry() {
  const Homeo p = Homeo::pl(PLCircleMap::from_lift_nodes(
      {{Rational(0), Rational(0)}, {Rational(1, 4), Rational(1, 8)}, {Rational(1, 2), Rational(1, 2)}}));
  const Homeo q = Homeo::pl(PLCircleMap::from_lift_nodes(
      {{Rational(0), Rational(0)}, {Rational(1, 2), Rational(1, 2)}, {Rational(3, 4), Rational(5, 8)}}));
  const BallResult b = ball(GenSet({{"p", p}, {"q", q}}), 3);
  bool ok = !b.truncated && b.ball_sizes.size() == 4;
  std::string sizes;
  for (std::size_t r = 0; r < b.ball_sizes.size(); ++r) {
    ok = ok && b.ball_sizes[r] == oracle::taxicab_ball(static_cast<std::int64_t>(r));
    sizes += (sizes.empty() ? "" : " ") + std::to_string(b.ball_sizes[r]);
  }

  const Homeo t = half_twist();
  const GenSet s({{"T", t}});
  std::string norms;
  for (int n = 1; n <= 6; ++n) {
    const WordNorm w = word_norm(t.power(n), s, 8);
    const bool match = w.exact.has_value() && *w.exact == static_cast<std::uint32_t>(n) &&
                       std::abs(w.lower_bound - n) <= 1e-9;
    ok = ok && match;
    norms += fmt::format("{}{}:{}/{:.6g}", norms.empty() ? "" : " ", n,
                         w.exact ? std::to_string(*w.exact) : std::string("?"), w.lower_bound);
  }
  const long rss = peak_rss_kib();
  ok = ok && rss < 1024L * 1024L;
  return {ok, fmt::format("ball sizes {}; |T^n| exact/lower {}; peak RSS {} MiB", sizes, norms, rss / 1024)};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

#ifdef UNDISTORT_CLI_PATH
std::string capture(const std::string& command) {
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(command.c_str(), "r"), pclose);
  if (!pipe) return {};
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), got);
  return out;
}
#endif

Outcome determinism() {
  const std::string path = std::string(UNDISTORT_DATA_DIR) + "/acceptance.scn";
  const std::string text = read_file(path);
  RunOptions options;
  options.scenario_name = "acceptance.scn";
  const Report first = run_scenario(load_scenario(text), options);
  const Report second = run_scenario(load_scenario(text), options);
  bool ok = first.text == second.text && first.tables.size() == second.tables.size();
  for (std::size_t i = 0; ok && i < first.tables.size(); ++i) {
    ok = first.tables[i].file == second.tables[i].file && first.tables[i].csv == second.tables[i].csv;
  }
  std::string detail = fmt::format("in-process {} bytes, {} tables", first.text.size(), first.tables.size());
#ifdef UNDISTORT_CLI_PATH
  const std::string command = fmt::format("'{}' run '{}' 2>/dev/null", UNDISTORT_CLI_PATH, path);
  const std::string a = capture(command);
  const std::string b = capture(command);
  ok = ok && !a.empty() && a == b;
  detail += fmt::format("; cli {} bytes, identical {}", a.size(), a == b ? "yes" : "no");
#endif
  return {ok, detail};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"shear-exactness", 1.0, shear_exactness},
      {"cocycle-identity", 10.0, cocycle_identity},
      {"cocycle-potential-roundtrip", 0.0, roundtrip},
      {"defect-bound", 0.0, defect_bound},
      {"rotation-numbers", 0.0, rotation_numbers},
      {"undistortion-certificates", 5.0, certificates},
      {"word-geometry", 60.0, word_geometry},
      {"determinism", 0.0, determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Criterion& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0.0 && secs >= c.time_limit) {
      out.ok = false;
      out.detail += fmt::format("; over time limit {} s", c.time_limit);
    }
    if (!out.ok) ++failed;
    fmt::print("{} [{}] {} ({:.3f} s) {}\n", out.ok ? "PASS" : "FAIL", i + 1, c.name, secs, out.detail);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
