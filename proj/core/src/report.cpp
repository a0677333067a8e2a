#include "undistort/report.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "undistort/cocycle.hpp"
#include "undistort/errors.hpp"
#include "undistort/format.hpp"
#include "undistort/measure.hpp"
#include "undistort/quasi.hpp"
#include "undistort/rotation.hpp"
#include "undistort/wordgeom.hpp"

namespace undistort {

namespace {

class Runner {
 public:
  Runner(const Scenario& s, const RunOptions& o)
      : s_(s),
        seed_(o.seed.value_or(s.seed.value_or(1))),
        budget_(o.budget ? o.budget : s.budget),
        name_(o.scenario_name) {}

  Report run() {
    line("# ", kReportSchema);
    if (!name_.empty()) kv("scenario", name_);
    kv("seed", std::to_string(seed_));
    kv("budget", budget_ ? std::to_string(*budget_) : "default");
    for (std::size_t i = 0; i < s_.spaces.size(); ++i) {
      kv("space " + std::to_string(i), s_.spaces[i].describe());
    }
    for (const auto& h : s_.homeos) kv("homeo " + h.name, h.map.describe());
    kv("analyses", std::to_string(s_.analyses.size()));
    for (const auto& a : s_.analyses) {
      out_ << "\n[analysis " << a.name << "]\n";
      space_ = &s_.spaces[a.space];
      kv("kind", a.kind);
      if (s_.spaces.size() > 1) kv_int("space", static_cast<std::int64_t>(a.space));
      dispatch(a);
    }
    return {out_.str(), std::move(tables_)};
  }

 private:
  template <class... T>
  void line(const T&... parts) {
    (out_ << ... << parts);
    out_ << '\n';
  }
  void kv(const std::string& key, const std::string& value) { out_ << key << " = " << value << '\n'; }
  void kv(const std::string& key, double value) { kv(key, format_real(value)); }
  void kv_int(const std::string& key, std::int64_t value) { kv(key, std::to_string(value)); }
  void kv_bool(const std::string& key, bool value) { kv(key, value ? "yes" : "no"); }

  std::string pt(const BasePoint& p) const { return format_point(p, space_->kind()); }

  BasePoint point(const AnalysisSpec& a, const std::string& key) const {
    const std::string& v = a.get(key);
    if (const auto it = s_.points.find(v); it != s_.points.end()) return it->second;
    const BasePoint p = space_->wrap(parse_point(v, *space_));
    space_->validate(p);
    return p;
  }

  const Homeo& homeo(const AnalysisSpec& a) const { return s_.homeo(a.get("homeo")); }

  std::int64_t budget(const AnalysisSpec& a, const Homeo& g) const {
    if (a.has("budget")) return a.integer("budget", 0);
    return budget_.value_or(default_budget(g));
  }

  std::optional<double> constant(const AnalysisSpec& a) const {
    if (const auto c = a.real("c")) return c;
    if (a.has("genset")) return s_.gensets.at(a.get("genset")).c();
    return std::nullopt;
  }

  std::size_t max_nodes(const AnalysisSpec& a) const {
    const std::int64_t n = a.integer("max_nodes", 0);
    return n > 0 ? static_cast<std::size_t>(n) : max_nodes_from_env();
  }

  void table(const AnalysisSpec& a, std::string csv) {
    const std::string file = a.name + ".csv";
    kv("table", file);
    tables_.push_back({file, std::move(csv)});
  }

  void certificate(const AnalysisSpec& a, const Certificate& c) {
    out_ << "[certificate " << a.name << "]\n";
    kv("mechanism", std::string(to_string(c.mechanism)));
    kv("verdict", std::string(to_string(c.verdict)));
    kv("invariant", c.invariant);
    kv("C", c.c ? format_real(*c.c) : "none");
    kv("tau_lower_bound", c.tau_lower_bound);
    kv("reason", c.reason);
    for (const auto& [k, v] : c.evidence) kv("evidence." + k, v);
    out_ << "[/certificate]\n";
    certificates_.emplace(a.name, c);
  }

  void dispatch(const AnalysisSpec& a) {
    const std::string& k = a.kind;
    if (k == "k") return run_k(a);
    if (k == "seminorm") return run_seminorm(a);
    if (k == "gcocycle") return run_gcocycle(a);
    if (k == "rot") return run_rot(a);
    if (k == "defect") return run_defect(a);
    if (k == "certify-rotation") return run_certify_rotation(a);
    if (k == "certify-fixed") return run_certify_fixed(a);
    if (k == "nielsen") return run_nielsen(a);
    if (k == "scc") return run_scc(a);
    if (k == "ball") return run_ball(a);
    if (k == "wordnorm") return run_wordnorm(a);
    if (k == "tau") return run_tau(a);
    throw ParseError("unknown analysis '" + k + "'", a.line, "kind");
  }

  void run_k(const AnalysisSpec& a) {
    const std::int64_t power = a.integer("power", 1);
    const Homeo g = homeo(a).power(power);
    kv("homeo", a.get("homeo"));
    kv_int("power", power);
    for (const auto& name : a.list("points")) {
      const BasePoint& p = s_.points.at(name);
      kv("k(" + name + ")", k_eval(g, p));
    }
    const std::int64_t samples = a.integer("samples", 0);
    if (samples > 0) {
      std::mt19937_64 rng(seed_);
      std::ostringstream csv;
      csv << "u,v,k\n";
      double sup = 0.0;
      for (std::int64_t i = 0; i < samples; ++i) {
        const BasePoint p = space_->random_point(rng);
        const double v = k_eval(g, p);
        sup = std::max(sup, std::abs(v));
        csv << format_real(p.u) << ',' << format_real(p.v) << ',' << format_real(v) << '\n';
      }
      kv_int("samples", samples);
      kv("sample_sup_abs", sup);
      table(a, csv.str());
    }
  }

  void run_seminorm(const AnalysisSpec& a) {
    const auto r = seminorm(homeo(a), static_cast<std::size_t>(a.integer("resolution", 256)));
    kv("homeo", a.get("homeo"));
    kv_int("per_axis", static_cast<std::int64_t>(r.per_axis));
    kv("value", r.value);
    kv("sup", r.sup);
    kv("inf", r.inf);
    kv("argsup", pt(r.argsup));
    kv("arginf", pt(r.arginf));
    kv_int("evaluations", static_cast<std::int64_t>(r.evaluations));
    kv_bool("certified", r.certified);
    if (r.certified) kv("upper_bound", r.upper_bound);
  }

  void run_gcocycle(const AnalysisSpec& a) {
    const Homeo& g = homeo(a);
    const BasePoint x = point(a, "point");
    const std::int64_t range = a.integer("range", 5);
    if (range < 0) throw PreconditionError("range must be nonnegative");
    const bool forward_only = !invertible(g);
    const auto t = g_table(x, g, range, forward_only);
    kv("homeo", a.get("homeo"));
    kv("point", pt(x));
    kv_int("range", range);
    kv_bool("forward_only", forward_only);
    double sup = 0.0;
    std::ostringstream csv;
    csv << "m,n,g\n";
    for (const auto& [mn, v] : t) {
      sup = std::max(sup, std::abs(v));
      csv << mn.first << ',' << mn.second << ',' << format_real(v) << '\n';
    }
    kv("sup", sup);
    if (range <= 10) {
      const std::int64_t lo = forward_only ? 0 : -range;
      out_ << "rows = m, columns = n from " << lo << " to " << range << '\n';
      for (std::int64_t m = lo; m <= range; ++m) {
        out_ << "g[" << m << "] =";
        for (std::int64_t n = lo; n <= range; ++n) out_ << ' ' << format_real(t.at({m, n}));
        out_ << '\n';
      }
    }
    table(a, csv.str());
  }

  void run_rot(const AnalysisSpec& a) {
    const Homeo& g = homeo(a);
    const BasePoint x = point(a, "point");
    const auto est = local_rotation_number(x, g, budget(a, g), a.integer("diagnostic", 0));
    kv("homeo", a.get("homeo"));
    kv("point", pt(x));
    kv_int("budget", est.n_used);
    kv_int("evaluations", static_cast<std::int64_t>(est.evaluations));
    kv("r", est.r);
    kv("rot", est.rot);
    kv("classical", est.classical);
    kv("residual_band", est.residual_band);
    const auto& d = est.diagnostic;
    kv_int("diagnostic_n", d.n);
    kv("diagnostic_sup", d.sup);
    kv("growth_per_doubling", d.growth_per_doubling);
    kv("growth_exponent", d.growth_exponent);
    kv("coboundary_residual", d.coboundary_residual);
    kv_bool("forward_only", d.forward_only);
    kv("verdict", std::string(to_string(est.verdict)));
    std::ostringstream csv;
    csv << "n,running_sup\n";
    for (std::size_t k = 0; k < d.running_sup.size(); ++k) {
      csv << k << ',' << format_real(d.running_sup[k]) << '\n';
    }
    table(a, csv.str());
  }

  void run_defect(const AnalysisSpec& a) {
    const BasePoint x = point(a, "x");
    const BasePoint y = point(a, "y");
    const auto d = defect_estimate(x, y, homeo(a), a.integer("n", 16));
    kv("homeo", a.get("homeo"));
    kv("x", pt(x));
    kv("y", pt(y));
    kv_int("n", d.n);
    kv("sampled", d.sampled);
    kv("sup_gx", d.sup_gx);
    kv("sup_gy", d.sup_gy);
    kv("bound", d.bound());
    kv_bool("forward_only", d.forward_only);
    kv_bool("holds", d.holds());
  }

  void run_certify_rotation(const AnalysisSpec& a) {
    const Homeo& g = homeo(a);
    const Certificate c = certify_two_rotation_points(point(a, "x"), point(a, "y"), g, budget(a, g),
                                                      constant(a), a.integer("diagnostic", 0));
    certificate(a, c);
  }

  void run_certify_fixed(const AnalysisSpec& a) {
    const Certificate c = certify_two_fixed_points(point(a, "x"), point(a, "y"), homeo(a),
                                                   s_.paths.at(a.get("path")), constant(a));
    certificate(a, c);
  }

  void run_nielsen(const AnalysisSpec& a) {
    const Homeo& g = homeo(a);
    const Measure& mu = s_.measures.at(a.get("mu"));
    const Measure& nu = s_.measures.at(a.get("nu"));
    std::optional<BasePoint> pin;
    if (a.has("pin")) pin = point(a, "pin");
    const NielsenResult r = nielsen_gap(mu, nu, g, pin);
    kv("homeo", a.get("homeo"));
    kv("mu", mu.describe());
    kv("nu", nu.describe());
    kv("pin", pt(pin.value_or(space_->basepoint())));
    kv("integral_mu", r.integral_mu);
    kv("integral_nu", r.integral_nu);
    kv("gap", r.gap);
    kv("tolerance", r.tolerance);
    kv_bool("equivalent", r.equivalent);
    certificate(a, certify_two_measures(mu, nu, g, constant(a)));
  }

  void run_scc(const AnalysisSpec& a) {
    const Homeo& g = homeo(a);
    const InvariantCircle circle = named_circle(*space_, a.get("circle"));
    const std::int64_t n = a.has("budget") ? a.integer("budget", 0) : budget_.value_or(kSccBudget);
    const auto r = scc_rotation_integral(circle, g, n);
    kv("homeo", a.get("homeo"));
    kv("circle", circle.name);
    kv_int("budget", r.n_used);
    kv("rotation", r.rotation);
    kv_int("pairing", r.pairing);
    kv("value", r.value);
    kv("error", r.error);
  }

  void run_ball(const AnalysisSpec& a) {
    const GenSet& gs = s_.gensets.at(a.get("genset"));
    const auto radius = static_cast<std::uint32_t>(a.integer("radius", 3));
    const BallResult b = ball(gs, radius, max_nodes(a));
    kv("genset", a.get("genset"));
    kv_int("generators", static_cast<std::int64_t>(gs.size()));
    kv("C", gs.c());
    kv_int("radius", b.radius);
    std::string sizes;
    for (auto v : b.ball_sizes) sizes += (sizes.empty() ? "" : " ") + std::to_string(v);
    kv("ball_sizes", sizes);
    kv_bool("truncated", b.truncated);
    std::ostringstream csv;
    csv << "radius,sphere,ball\n";
    for (std::size_t r = 0; r < b.ball_sizes.size(); ++r) {
      csv << r << ',' << b.sphere_sizes[r] << ',' << b.ball_sizes[r] << '\n';
    }
    table(a, csv.str());
  }

  void run_wordnorm(const AnalysisSpec& a) {
    const GenSet& gs = s_.gensets.at(a.get("genset"));
    const auto w = word_norm(homeo(a), gs, static_cast<std::uint32_t>(a.integer("radius", 6)),
                             max_nodes(a));
    kv("homeo", a.get("homeo"));
    kv("genset", a.get("genset"));
    kv("exact", w.exact ? std::to_string(*w.exact) : "none");
    if (w.witness) kv("witness", gs.spell(*w.witness));
    kv("seminorm", w.seminorm);
    kv("lower_bound", w.lower_bound);
    kv_bool("truncated", w.truncated);
  }

  void run_tau(const AnalysisSpec& a) {
    const GenSet& gs = s_.gensets.at(a.get("genset"));
    std::vector<Certificate> certs;
    for (const auto& name : a.list("certificates")) {
      const auto it = certificates_.find(name);
      if (it == certificates_.end()) {
        throw PreconditionError("analysis '" + name + "' did not produce a certificate");
      }
      certs.push_back(it->second);
    }
    const auto t = translation_length(homeo(a), gs, a.integer("powers", 6),
                                      static_cast<std::uint32_t>(a.integer("radius", 8)), certs,
                                      max_nodes(a));
    kv("homeo", a.get("homeo"));
    kv("genset", a.get("genset"));
    kv("upper", t.upper ? format_real(*t.upper) : "none");
    kv("lower", t.lower());
    kv("certificate_lower", t.certificate_lower);
    kv("homomorphism_lower", t.homomorphism_lower);
    kv_bool("truncated", t.truncated);
    std::ostringstream csv;
    csv << "n,norm\n";
    for (const auto& [n, norm] : t.power_norms) csv << n << ',' << norm << '\n';
    table(a, csv.str());
  }

  const Scenario& s_;
  const Space* space_ = nullptr;
  std::uint64_t seed_;
  std::optional<std::int64_t> budget_;
  std::string name_;
  std::ostringstream out_;
  std::vector<ReportTable> tables_;
  std::map<std::string, Certificate> certificates_;
};

}  // namespace

Report run_scenario(const Scenario& scenario, const RunOptions& options) {
  return Runner(scenario, options).run();
}

}  // namespace undistort
