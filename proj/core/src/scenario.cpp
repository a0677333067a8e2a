#include "undistort/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>

#include "undistort/errors.hpp"
#include "undistort/numbers.hpp"

namespace undistort {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> tokens(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
  });
}

std::int64_t parse_int(const ScenarioEntry& e) {
  const std::string_view v = trim(e.value);
  std::int64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ParseError("expected an integer, got '" + e.value + "'", e.line, e.key);
  }
  return out;
}

double parse_number(std::string_view text) {
  text = trim(text);
  if (text == "inf" || text == "+inf") return kInfinity;
  if (text == "-inf") return -kInfinity;
  try {
    return to_double(parse_rational(text));
  } catch (const std::exception&) {
  }
  const std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || std::isnan(v)) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  return v;
}

double parse_real(const ScenarioEntry& e) {
  try {
    return parse_number(e.value);
  } catch (const std::invalid_argument&) {
    throw ParseError("expected a number, got '" + e.value + "'", e.line, e.key);
  }
}

Rational parse_exact(const ScenarioEntry& e) {
  try {
    return parse_rational(trim(e.value));
  } catch (const std::exception&) {
    throw ParseError("expected a rational literal, got '" + e.value + "'", e.line, e.key);
  }
}

ExactAngle parse_angle(const ScenarioEntry& e) {
  try {
    return ExactAngle::parse(e.value);
  } catch (const std::invalid_argument&) {
    throw ParseError("expected an exact angle, got '" + e.value + "'", e.line, e.key);
  }
}

BasePoint point_from_tokens(const std::vector<std::string>& t, const Space& space) {
  const bool circle = space.kind() == SpaceKind::Circle;
  if (t.size() != 2 && !(circle && t.size() == 1)) {
    throw std::invalid_argument(circle ? "a point is 'u' or 'u v'" : "a point is 'u v'");
  }
  BasePoint p{parse_number(t[0]), t.size() == 2 ? parse_number(t[1]) : 0.0};
  if (std::isinf(p.u)) throw std::invalid_argument("the angle coordinate must be finite");
  return p;
}

enum class ValueKind : std::uint8_t {
  Integer,
  Real,
  Exact,
  Angle,
  Text,
  PointArg,  // point name or literal
  Name,      // reference by name
  NameList,
};

enum class Ref : std::uint8_t { None, Homeo, Point, Path, Measure, GenSet, Analysis };

struct KeySpec {
  std::string_view key;
  ValueKind kind;
  bool required = false;
  bool repeatable = false;
  Ref ref = Ref::None;
};

const char* ref_name(Ref r) {
  switch (r) {
    case Ref::Homeo: return "homeo";
    case Ref::Point: return "point";
    case Ref::Path: return "path";
    case Ref::Measure: return "measure";
    case Ref::GenSet: return "genset";
    case Ref::Analysis: return "analysis";
    case Ref::None: break;
  }
  return "name";
}

struct AnalysisSchema {
  std::string_view kind;
  std::vector<KeySpec> keys;
};

const std::vector<AnalysisSchema>& analysis_schemas() {
  using V = ValueKind;
  static const std::vector<AnalysisSchema> schemas = {
      {"k",
       {{"homeo", V::Name, true, false, Ref::Homeo},
        {"points", V::NameList, false, false, Ref::Point},
        {"power", V::Integer},
        {"samples", V::Integer}}},
      {"seminorm", {{"homeo", V::Name, true, false, Ref::Homeo}, {"resolution", V::Integer}}},
      {"gcocycle",
       {{"homeo", V::Name, true, false, Ref::Homeo},
        {"point", V::PointArg, true},
        {"range", V::Integer}}},
      {"rot",
       {{"homeo", V::Name, true, false, Ref::Homeo},
        {"point", V::PointArg, true},
        {"budget", V::Integer},
        {"diagnostic", V::Integer}}},
      {"defect",
       {{"homeo", V::Name, true, false, Ref::Homeo},
        {"x", V::PointArg, true},
        {"y", V::PointArg, true},
        {"n", V::Integer}}},
      {"certify-rotation",
       {{"homeo", V::Name, true, false, Ref::Homeo},
        {"x", V::PointArg, true},
        {"y", V::PointArg, true},
        {"budget", V::Integer},
        {"diagnostic", V::Integer},
        {"c", V::Real},
        {"genset", V::Name, false, false, Ref::GenSet}}},
      {"certify-fixed",
       {{"homeo", V::Name, true, false, Ref::Homeo},
        {"x", V::PointArg, true},
        {"y", V::PointArg, true},
        {"path", V::Name, true, false, Ref::Path},
        {"c", V::Real},
        {"genset", V::Name, false, false, Ref::GenSet}}},
      {"nielsen",
       {{"homeo", V::Name, true, false, Ref::Homeo},
        {"mu", V::Name, true, false, Ref::Measure},
        {"nu", V::Name, true, false, Ref::Measure},
        {"pin", V::PointArg},
        {"c", V::Real},
        {"genset", V::Name, false, false, Ref::GenSet}}},
      {"scc",
       {{"homeo", V::Name, true, false, Ref::Homeo},
        {"circle", V::Text, true},
        {"budget", V::Integer}}},
      {"ball",
       {{"genset", V::Name, true, false, Ref::GenSet},
        {"radius", V::Integer},
        {"max_nodes", V::Integer}}},
      {"wordnorm",
       {{"homeo", V::Name, true, false, Ref::Homeo},
        {"genset", V::Name, true, false, Ref::GenSet},
        {"radius", V::Integer},
        {"max_nodes", V::Integer}}},
      {"tau",
       {{"homeo", V::Name, true, false, Ref::Homeo},
        {"genset", V::Name, true, false, Ref::GenSet},
        {"powers", V::Integer},
        {"radius", V::Integer},
        {"certificates", V::NameList, false, false, Ref::Analysis},
        {"max_nodes", V::Integer}}},
  };
  return schemas;
}

struct FamilySchema {
  std::string_view family;
  std::string_view grammar;
  std::vector<KeySpec> keys;
};

const std::vector<FamilySchema>& family_schemas() {
  using V = ValueKind;
  static const std::vector<FamilySchema> schemas = {
      {"identity", "any space", {}},
      {"rotation", "circle; rho = exact angle (e.g. 1/3, sqrt2-1)", {{"rho", V::Angle, true}}},
      {"annulus-twist",
       "annulus; (u, r) -> (u + (1-r) rho0 + r rho1, r)",
       {{"rho0", V::Angle, true}, {"rho1", V::Angle, true}}},
      {"torus-shear",
       "circle-x-line; (t, x) -> (t + |x+n| - |x|, x + n), infinity fixed",
       {{"n", V::Integer}}},
      {"torus-twist",
       "torus2; (u, v) -> (u + a sin^2(pi v), v)",
       {{"amplitude", V::Exact, true}}},
      {"gradient", "circle; time-t flow of x' = -sin(2 pi x), fixed points 0 and 1/2", {{"time", V::Exact}}},
      {"pl",
       "circle; node = x y (lift nodes, rational), optional irrational shift",
       {{"node", V::Text, true, true}, {"shift", V::Angle}}},
      {"sampled",
       "lift of another map tabulated on a grid; of = homeo, per_axis = n",
       {{"of", V::Name, true, false, Ref::Homeo}, {"per_axis", V::Integer}}},
      {"compose",
       "of = a b c means a o b o c",
       {{"of", V::NameList, true, false, Ref::Homeo}}},
      {"power",
       "of = homeo, n = integer",
       {{"of", V::Name, true, false, Ref::Homeo}, {"n", V::Integer, true}}},
      {"inverse", "of = homeo", {{"of", V::Name, true, false, Ref::Homeo}}},
  };
  return schemas;
}

class Loader {
 public:
  Scenario load(std::string_view text) {
    const auto sections = parse_sections(text);
    bool used = false;
    for (const auto& sec : sections) {
      if (sec.type == "space") {
        load_space(sec, !used);
        continue;
      }
      if (sec.type == "run") {
        load_run(sec);
        continue;
      }
      used = true;
      if (sec.type == "homeo") {
        load_homeo(sec);
      } else if (sec.type == "point") {
        load_point(sec);
      } else if (sec.type == "path") {
        load_path(sec);
      } else if (sec.type == "measure") {
        load_measure(sec);
      } else if (sec.type == "genset") {
        load_genset(sec);
      } else if (sec.type == "analysis") {
        load_analysis(sec);
      } else {
        throw ParseError("unknown section type '" + sec.type + "'", sec.line);
      }
    }
    return std::move(out_);
  }

 private:
  void require_name(const ScenarioSection& sec, bool named) {
    if (named && sec.name.empty()) {
      throw ParseError("[" + sec.type + "] needs a name", sec.line);
    }
    if (!named && !sec.name.empty()) {
      throw ParseError("[" + sec.type + "] takes no name", sec.line);
    }
    if (named && !names_.insert(sec.type + ":" + sec.name).second) {
      throw ParseError("duplicate " + sec.type + " '" + sec.name + "'", sec.line);
    }
  }

  bool resolves(Ref ref, const std::string& name) const {
    switch (ref) {
      case Ref::Homeo:
        return std::any_of(out_.homeos.begin(), out_.homeos.end(),
                           [&](const NamedHomeo& h) { return h.name == name; });
      case Ref::Point: return out_.points.count(name) != 0;
      case Ref::Path: return out_.paths.count(name) != 0;
      case Ref::Measure: return out_.measures.count(name) != 0;
      case Ref::GenSet: return out_.gensets.count(name) != 0;
      case Ref::Analysis:
        return std::any_of(out_.analyses.begin(), out_.analyses.end(),
                           [&](const AnalysisSpec& a) { return a.name == name; });
      case Ref::None: break;
    }
    return true;
  }

  // Checks keys, multiplicities, value syntax and references.
  void check(const ScenarioSection& sec, const std::vector<KeySpec>& specs,
             const std::set<std::string_view>& extra = {}) {
    std::set<std::string> seen;
    for (const auto& e : sec.entries) {
      if (extra.count(e.key)) {
        if (!seen.insert(e.key).second) throw ParseError("duplicate key", e.line, e.key);
        continue;
      }
      const auto it = std::find_if(specs.begin(), specs.end(),
                                   [&](const KeySpec& k) { return k.key == e.key; });
      if (it == specs.end()) {
        throw ParseError("unknown key in [" + sec.type + "]", e.line, e.key);
      }
      if (!seen.insert(e.key).second && !it->repeatable) {
        throw ParseError("duplicate key", e.line, e.key);
      }
      check_value(e, *it);
    }
    for (const auto& k : specs) {
      if (k.required && !seen.count(std::string(k.key))) {
        throw ParseError("missing required key '" + std::string(k.key) + "' in [" + sec.type +
                             (sec.name.empty() ? "" : " " + sec.name) + "]",
                         sec.line, std::string(k.key));
      }
    }
  }

  void check_value(const ScenarioEntry& e, const KeySpec& k) {
    switch (k.kind) {
      case ValueKind::Integer: parse_int(e); break;
      case ValueKind::Real: parse_real(e); break;
      case ValueKind::Exact: parse_exact(e); break;
      case ValueKind::Angle: parse_angle(e); break;
      case ValueKind::Text:
        if (trim(e.value).empty()) throw ParseError("empty value", e.line, e.key);
        break;
      case ValueKind::PointArg: point_arg(e); break;
      case ValueKind::Name: {
        const std::string v(trim(e.value));
        if (!valid_name(v)) throw ParseError("expected a name, got '" + e.value + "'", e.line, e.key);
        if (!resolves(k.ref, v)) {
          throw ParseError(std::string("unresolved ") + ref_name(k.ref) + " '" + v + "'", e.line,
                           e.key);
        }
        break;
      }
      case ValueKind::NameList: {
        const auto names = tokens(e.value);
        if (names.empty()) throw ParseError("empty list", e.line, e.key);
        for (const auto& v : names) {
          if (!resolves(k.ref, v)) {
            throw ParseError(std::string("unresolved ") + ref_name(k.ref) + " '" + v + "'",
                             e.line, e.key);
          }
        }
        break;
      }
    }
  }

  BasePoint point_arg(const ScenarioEntry& e) const {
    const std::string v(trim(e.value));
    if (const auto it = out_.points.find(v); it != out_.points.end()) return it->second;
    try {
      return parse_point(v, space());
    } catch (const ParseError&) {
      throw;
    } catch (const std::invalid_argument& err) {
      throw ParseError("unresolved point '" + v + "' (" + err.what() + ")", e.line, e.key);
    }
  }

  static const ScenarioEntry* find(const ScenarioSection& sec, std::string_view key) {
    for (const auto& e : sec.entries) {
      if (e.key == key) return &e;
    }
    return nullptr;
  }

  const Space& space() const { return out_.spaces.back(); }

  // `replace` drops the default circle when nothing has used it yet.
  void load_space(const ScenarioSection& sec, bool replace) {
    require_name(sec, false);
    check(sec, {{"kind", ValueKind::Text, true}, {"class", ValueKind::Text}});
    const ScenarioEntry* kind_entry = find(sec, "kind");
    SpaceKind kind{};
    try {
      kind = parse_space_kind(trim(kind_entry->value));
    } catch (const PreconditionError&) {
      throw ParseError("unknown space kind '" + kind_entry->value + "'", kind_entry->line, "kind");
    }
    std::vector<std::int64_t> pairing;
    if (const ScenarioEntry* c = find(sec, "class")) {
      for (const auto& t : tokens(c->value)) pairing.push_back(parse_int({c->key, t, c->line}));
    } else if (kind == SpaceKind::Torus2 || kind == SpaceKind::CircleTimesCompactifiedLine) {
      pairing = {1, 0};
    } else {
      pairing = {1};
    }
    if (replace) out_.spaces.clear();
    out_.spaces.emplace_back(kind, pairing);
  }

  void load_run(const ScenarioSection& sec) {
    require_name(sec, false);
    check(sec, {{"seed", ValueKind::Integer}, {"budget", ValueKind::Integer}});
    if (const auto* e = find(sec, "seed")) out_.seed = static_cast<std::uint64_t>(parse_int(*e));
    if (const auto* e = find(sec, "budget")) out_.budget = parse_int(*e);
  }

  void load_homeo(const ScenarioSection& sec) {
    require_name(sec, true);
    const ScenarioEntry* fam = find(sec, "family");
    if (!fam) throw ParseError("missing required key 'family'", sec.line, "family");
    const std::string family(trim(fam->value));
    const auto& schemas = family_schemas();
    const auto it = std::find_if(schemas.begin(), schemas.end(),
                                 [&](const FamilySchema& f) { return f.family == family; });
    if (it == schemas.end()) {
      throw ParseError("unknown family '" + family + "'", fam->line, "family");
    }
    check(sec, it->keys, {"family"});

    const Space& here = space();
    auto homeo = [&](std::string_view key) { return out_.homeo(std::string(trim(find(sec, key)->value))); };
    auto opt_int = [&](std::string_view key, std::int64_t fallback) {
      const auto* e = find(sec, key);
      return e ? parse_int(*e) : fallback;
    };
    Homeo g = Homeo::identity(here);
    if (family == "identity") {
      g = Homeo::identity(here);
    } else if (family == "rotation") {
      g = Homeo::rigid_rotation(parse_angle(*find(sec, "rho")), here);
    } else if (family == "annulus-twist") {
      g = Homeo::annulus_twist(parse_angle(*find(sec, "rho0")), parse_angle(*find(sec, "rho1")),
                               here);
    } else if (family == "torus-shear") {
      g = Homeo::torus_shear(opt_int("n", 1), here);
    } else if (family == "torus-twist") {
      g = Homeo::torus_twist(parse_exact(*find(sec, "amplitude")), here);
    } else if (family == "gradient") {
      const auto* e = find(sec, "time");
      g = Homeo::gradient_time_one(e ? parse_exact(*e) : Rational(1), here);
    } else if (family == "pl") {
      std::vector<PLCircleMap::Node> nodes;
      for (const auto& e : sec.entries) {
        if (e.key != "node") continue;
        const auto t = tokens(e.value);
        if (t.size() != 2) throw ParseError("a node is 'x y'", e.line, e.key);
        nodes.push_back({parse_exact({e.key, t[0], e.line}), parse_exact({e.key, t[1], e.line})});
      }
      ExactAngle shift;
      if (const auto* e = find(sec, "shift")) shift = parse_angle(*e);
      g = Homeo::pl(PLCircleMap::from_lift_nodes(std::move(nodes)), here, shift);
    } else if (family == "sampled") {
      g = Homeo::sampled(homeo("of"), static_cast<std::size_t>(opt_int("per_axis", 256)));
    } else if (family == "compose") {
      const auto names = tokens(find(sec, "of")->value);
      g = out_.homeo(names.back());
      for (auto n = names.rbegin() + 1; n != names.rend(); ++n) g = compose(out_.homeo(*n), g);
    } else if (family == "power") {
      g = homeo("of").power(parse_int(*find(sec, "n")));
    } else if (family == "inverse") {
      g = homeo("of").inverse();
    }
    if (!(g.space() == here)) {
      throw SpaceMismatchError("homeo '" + sec.name + "' lives on " + g.space().describe() +
                               ", current space is " + here.describe());
    }
    out_.homeos.push_back({sec.name, family, g});
  }

  void load_point(const ScenarioSection& sec) {
    require_name(sec, true);
    check(sec, {{"at", ValueKind::PointArg, true}});
    const BasePoint p = space().wrap(point_arg(*find(sec, "at")));
    space().validate(p);
    out_.points.emplace(sec.name, p);
  }

  void load_path(const ScenarioSection& sec) {
    require_name(sec, true);
    check(sec, {{"from", ValueKind::PointArg, true}, {"segment", ValueKind::Text, false, true}});
    Path path;
    path.start = point_arg(*find(sec, "from"));
    for (const auto& e : sec.entries) {
      if (e.key != "segment") continue;
      auto t = tokens(e.value);
      Winding w{0, 0};
      const auto turns = std::find(t.begin(), t.end(), "turns");
      if (turns != t.end()) {
        const std::vector<std::string> ks(turns + 1, t.end());
        if (ks.empty() || ks.size() > 2) throw ParseError("turns takes one or two integers", e.line, e.key);
        for (std::size_t i = 0; i < ks.size(); ++i) w[i] = parse_int({e.key, ks[i], e.line});
        t.erase(turns, t.end());
      }
      std::string joined;
      for (const auto& s : t) joined += (joined.empty() ? "" : " ") + s;
      path.segments.push_back({point_arg({e.key, joined, e.line}), w});
    }
    space().validate(path.start);
    for (const auto& seg : path.segments) space().validate(seg.to);
    out_.paths.emplace(sec.name, std::move(path));
  }

  void load_measure(const ScenarioSection& sec) {
    require_name(sec, true);
    const ScenarioEntry* kind = find(sec, "kind");
    if (!kind) throw ParseError("missing required key 'kind'", sec.line, "kind");
    const std::string k(trim(kind->value));
    const Space& here = space();
    if (k == "atomic") {
      check(sec, {{"atom", ValueKind::Text, true, true}}, {"kind"});
      std::vector<Atom> atoms;
      for (const auto& e : sec.entries) {
        if (e.key != "atom") continue;
        auto t = tokens(e.value);
        if (t.size() < 2) throw ParseError("an atom is '<point> <weight>'", e.line, e.key);
        const double w = parse_real({e.key, t.back(), e.line});
        t.pop_back();
        std::string joined;
        for (const auto& s : t) joined += (joined.empty() ? "" : " ") + s;
        const BasePoint p = here.wrap(point_arg({e.key, joined, e.line}));
        here.validate(p);
        atoms.push_back({p, w});
      }
      out_.measures.emplace(sec.name, Measure::atomic(here, std::move(atoms)));
    } else if (k == "circle") {
      check(sec, {{"circle", ValueKind::Text, true}, {"quadrature", ValueKind::Integer}}, {"kind"});
      const auto* q = find(sec, "quadrature");
      out_.measures.emplace(
          sec.name, Measure::circle(here, named_circle(here, trim(find(sec, "circle")->value)),
                                    q ? static_cast<std::size_t>(parse_int(*q)) : kCircleQuadrature));
    } else if (k == "empirical") {
      check(sec,
            {{"homeo", ValueKind::Name, true, false, Ref::Homeo},
             {"point", ValueKind::PointArg, true},
             {"n", ValueKind::Integer}},
            {"kind"});
      const auto* n = find(sec, "n");
      out_.measures.emplace(sec.name, Measure::empirical(out_.homeo(std::string(trim(find(sec, "homeo")->value))),
                                                         point_arg(*find(sec, "point")),
                                                         n ? parse_int(*n) : 10000));
    } else {
      throw ParseError("unknown measure kind '" + k + "'", kind->line, "kind");
    }
  }

  void load_genset(const ScenarioSection& sec) {
    require_name(sec, true);
    check(sec, {{"gen", ValueKind::NameList, true, true, Ref::Homeo},
                {"resolution", ValueKind::Integer}});
    std::vector<std::pair<std::string, Homeo>> gens;
    for (const auto& e : sec.entries) {
      if (e.key != "gen") continue;
      for (const auto& n : tokens(e.value)) gens.emplace_back(n, out_.homeo(n));
    }
    const auto* r = find(sec, "resolution");
    out_.gensets.emplace(sec.name, GenSet(gens, r ? static_cast<std::size_t>(parse_int(*r)) : 256));
  }

  void load_analysis(const ScenarioSection& sec) {
    require_name(sec, true);
    const ScenarioEntry* kind = find(sec, "kind");
    if (!kind) throw ParseError("missing required key 'kind'", sec.line, "kind");
    const std::string k(trim(kind->value));
    const auto& schemas = analysis_schemas();
    const auto it = std::find_if(schemas.begin(), schemas.end(),
                                 [&](const AnalysisSchema& s) { return s.kind == k; });
    if (it == schemas.end()) throw ParseError("unknown analysis '" + k + "'", kind->line, "kind");
    check(sec, it->keys, {"kind"});
    AnalysisSpec spec;
    spec.name = sec.name;
    spec.kind = k;
    spec.line = sec.line;
    spec.space = out_.spaces.size() - 1;
    for (const auto& e : sec.entries) {
      if (e.key != "kind") spec.params.emplace(e.key, ScenarioEntry{e.key, std::string(trim(e.value)), e.line});
    }
    out_.analyses.push_back(std::move(spec));
  }

  Scenario out_;
  std::set<std::string> names_;
};

}  // namespace

std::vector<ScenarioSection> parse_sections(std::string_view text) {
  std::vector<ScenarioSection> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("unterminated section header", line_no);
      const auto parts = tokens(line.substr(1, line.size() - 2));
      if (parts.empty() || parts.size() > 2) {
        throw ParseError("a section header is [type] or [type name]", line_no);
      }
      if (parts.size() == 2 && !valid_name(parts[1])) {
        throw ParseError("invalid name '" + parts[1] + "'", line_no);
      }
      out.push_back({parts[0], parts.size() == 2 ? parts[1] : "", line_no, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no);
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ParseError("empty key", line_no);
    if (out.empty()) throw ParseError("key outside of any section", line_no, key);
    out.back().entries.push_back({key, value, line_no});
  }
  return out;
}

std::int64_t AnalysisSpec::integer(const std::string& key, std::int64_t fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : parse_int(it->second);
}

std::optional<double> AnalysisSpec::real(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end()) return std::nullopt;
  return parse_real(it->second);
}

std::vector<std::string> AnalysisSpec::list(const std::string& key) const {
  const auto it = params.find(key);
  return it == params.end() ? std::vector<std::string>{} : tokens(it->second.value);
}

const Homeo& Scenario::homeo(const std::string& name) const {
  for (const auto& h : homeos) {
    if (h.name == name) return h.map;
  }
  throw PreconditionError("no homeo named '" + name + "'");
}

Scenario load_scenario(std::string_view text) { return Loader().load(text); }

BasePoint parse_point(std::string_view text, const Space& space) {
  return point_from_tokens(tokens(text), space);
}

std::string list_families() {
  std::ostringstream out;
  out << "spaces (section [space], key kind; class = pairing integers):\n";
  out << "  circle         R/Z, class 1\n";
  out << "  annulus        R/Z x [0,1], class 1\n";
  out << "  torus2         R/Z x R/Z, class 'k1 k2' (default 1 0)\n";
  out << "  circle-x-line  R/Z x (R u {inf}), class 'k1 k2' (default 1 0)\n";
  out << "\nfamilies (section [homeo NAME], key family):\n";
  for (const auto& f : family_schemas()) {
    out << "  " << f.family;
    for (std::size_t i = f.family.size(); i < 15; ++i) out << ' ';
    out << f.grammar;
    if (!f.keys.empty()) {
      out << "\n" << std::string(17, ' ') << "keys:";
      for (const auto& k : f.keys) out << ' ' << k.key << (k.required ? "" : "?");
    }
    out << '\n';
  }
  out << "\nmeasures (section [measure NAME], key kind):\n";
  out << "  atomic     atom = <point> <weight> (repeatable)\n";
  out << "  circle     circle = boundary:0 | boundary:1 | infinity | circle | horizontal:<v> | "
         "vertical:<u>; quadrature?\n";
  out << "  empirical  homeo, point, n?\n";
  out << "\nanalyses (section [analysis NAME], key kind):\n";
  for (const auto& a : analysis_schemas()) {
    out << "  " << a.kind;
    for (std::size_t i = a.kind.size(); i < 17; ++i) out << ' ';
    for (const auto& k : a.keys) out << ' ' << k.key << (k.required ? "" : "?");
    out << '\n';
  }
  out << "\nother sections: [run] seed? budget?; [point NAME] at; [path NAME] from, segment = "
         "<point> [turns k1 k2] (repeatable); [genset NAME] gen (repeatable), resolution?\n";
  return out.str();
}

}  // namespace undistort
