#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "undistort/undistort.hpp"

namespace {

using namespace undistort;

const char* kShear = R"(
[space]
kind = circle-x-line

[homeo g]
family = torus-shear

[point o]
at = 0 0
)";

const char* kTwist = R"(
[space]
kind = annulus
[homeo T]
family = annulus-twist
rho0 = 0
rho1 = 1/2
[genset S]
gen = T
[analysis cert]
kind = certify-rotation
homeo = T
x = 0 0
y = 0 1
genset = S
)";

std::string value_of(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (line.rfind(key + " = ", 0) == 0) return line.substr(key.size() + 3);
  }
  return {};
}

ParseError parse_failure(const std::string& text) {
  try {
    load_scenario(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error";
  return ParseError("none", 0);
}

TEST(Scenario, SplitsSections) {
  const auto secs = parse_sections("# top\n[space]\nkind = circle # trailing\n\n[homeo a]\nfamily=identity\n");
  ASSERT_EQ(secs.size(), 2u);
  EXPECT_EQ(secs[0].type, "space");
  EXPECT_EQ(secs[0].entries[0].value, "circle");
  EXPECT_EQ(secs[1].name, "a");
  EXPECT_EQ(secs[1].entries[0].line, 6u);
}

TEST(Scenario, MalformedLines) {
  EXPECT_EQ(parse_failure("[space\n").line(), 1u);
  EXPECT_EQ(parse_failure("kind = circle\n").line(), 1u);
  EXPECT_EQ(parse_failure("[space]\nkind circle\n").line(), 2u);
  EXPECT_EQ(parse_failure("[homeo a b c]\n").line(), 1u);
}

TEST(Scenario, MisspelledKeyNamesKeyAndLine) {
  const ParseError e = parse_failure("[space]\nkind = annulus\n[homeo T]\nfamily = annulus-twist\nrho0 = 0\nrh01 = 1/2\n");
  EXPECT_EQ(e.line(), 6u);
  EXPECT_EQ(e.key(), "rh01");
  EXPECT_NE(std::string(e.what()).find("rh01"), std::string::npos);
  EXPECT_NE(std::string(e.what()).find("line 6"), std::string::npos);
}

TEST(Scenario, StrictErrors) {
  EXPECT_EQ(parse_failure(std::string(kShear) + "[analysis a]\nkind = rotation-number\n").key(), "kind");
  EXPECT_EQ(parse_failure(std::string(kShear) + "[analysis a]\nkind = rot\nhomeo = h\npoint = o\n").key(),
            "homeo");
  EXPECT_EQ(parse_failure(std::string(kShear) + "[analysis a]\nkind = rot\nhomeo = g\npoint = nowhere\n").key(),
            "point");
  EXPECT_EQ(parse_failure(std::string(kShear) + "[analysis a]\nkind = rot\nhomeo = g\n").key(), "point");
  EXPECT_EQ(parse_failure(std::string(kShear) + "[analysis a]\nkind = rot\nhomeo = g\npoint = o\nbudget = ten\n").key(),
            "budget");
  EXPECT_EQ(parse_failure(std::string(kShear) + "[homeo g]\nfamily = identity\n").line(), 10u);
  EXPECT_EQ(parse_failure(std::string(kShear) + "[widget w]\n").line(), 10u);
  EXPECT_EQ(parse_failure("[space]\nkind = sphere\n").key(), "kind");
  EXPECT_EQ(parse_failure("[homeo a]\nfamily = rotation\nrho = 1/3\nrho = 1/4\n").line(), 4u);
}

TEST(Scenario, SemanticErrorsArePreconditions) {
  EXPECT_THROW(load_scenario("[space]\nkind = annulus\n[point p]\nat = 0 2\n"), DomainError);
  EXPECT_THROW(load_scenario("[measure m]\nkind = atomic\natom = 0 1/2\n"), PreconditionError);
  // A shear defined on the torus.
  EXPECT_THROW(load_scenario("[space]\nkind = torus2\n[homeo g]\nfamily = torus-shear\n"),
               PreconditionError);
}

TEST(Scenario, RationalLiteralsAreExact) {
  const Scenario s = load_scenario("[homeo a]\nfamily = rotation\nrho = 1/3 + 1/2*sqrt2\n");
  EXPECT_EQ(s.homeos.at(0).map.describe(), "rotation(1/3+1/2*sqrt2)");
  const Scenario t = load_scenario(std::string(kShear) + "[point far]\nat = 1/3 -inf\n");
  EXPECT_EQ(t.points.at("far").v, kInfinity);
  EXPECT_NEAR(t.points.at("far").u, 1.0 / 3.0, 1e-16);
}

TEST(Scenario, EmptyAnalysisList) {
  const Report r = run_scenario(load_scenario(kShear));
  EXPECT_EQ(value_of(r.text, "analyses"), "0");
  EXPECT_TRUE(r.tables.empty());
  EXPECT_EQ(r.text.rfind(std::string("# ") + std::string(kReportSchema), 0), 0u);
}

TEST(Scenario, ShearCocycleTable) {
  const Report r = run_scenario(
      load_scenario(std::string(kShear) + "[analysis G]\nkind = gcocycle\nhomeo = g\npoint = o\n"));
  ASSERT_EQ(r.tables.size(), 1u);
  EXPECT_EQ(r.tables[0].file, "G.csv");
  std::istringstream csv(r.tables[0].csv);
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "m,n,g");
  int rows = 0;
  while (std::getline(csv, line)) {
    long m = 0, n = 0;
    double g = 0;
    ASSERT_EQ(std::sscanf(line.c_str(), "%ld,%ld,%lf", &m, &n, &g), 3);
    EXPECT_EQ(g, static_cast<double>(std::labs(m + n) - std::labs(m) - std::labs(n)));
    ++rows;
  }
  EXPECT_EQ(rows, 121);
  EXPECT_EQ(value_of(r.text, "sup"), "10");
}

TEST(Scenario, AnnulusCertificate) {
  const Report r = run_scenario(load_scenario(kTwist));
  EXPECT_EQ(value_of(r.text, "verdict"), "undistorted");
  EXPECT_GE(std::stod(value_of(r.text, "tau_lower_bound")), 1.0 - 1e-12);
  EXPECT_EQ(value_of(r.text, "C"), "0.5");
}

TEST(Scenario, BudgetAndSeedOverrides) {
  const Scenario s = load_scenario(std::string(kShear) +
                                   "[analysis r]\nkind = rot\nhomeo = g\npoint = o\n"
                                   "[analysis k]\nkind = k\nhomeo = g\nsamples = 4\n");
  RunOptions o;
  o.budget = 1000;
  o.seed = 3;
  const Report a = run_scenario(s, o);
  EXPECT_EQ(value_of(a.text, "budget"), "1000");
  EXPECT_EQ(value_of(a.text, "seed"), "3");
  o.seed = 4;
  const Report b = run_scenario(s, o);
  EXPECT_NE(a.tables.back().csv, b.tables.back().csv);
  o.seed = 3;
  EXPECT_EQ(run_scenario(s, o).text, a.text);
}

TEST(Scenario, RunTimePreconditions) {
  const std::string text = R"(
[space]
kind = torus2
[homeo t]
family = torus-twist
amplitude = 1
[path p]
from = 0 0
segment = 0 1/4
[analysis f]
kind = certify-fixed
homeo = t
x = 0 0
y = 0 1/4
path = p
)";
  const Scenario s = load_scenario(text);
  EXPECT_THROW(run_scenario(s), PreconditionError);
}

TEST(Scenario, TauUsesEarlierCertificates) {
  const Report r = run_scenario(load_scenario(std::string(kTwist) +
                                              "[analysis t]\nkind = tau\nhomeo = T\ngenset = S\n"
                                              "certificates = cert\n"));
  EXPECT_EQ(value_of(r.text, "certificate_lower"), "1");
  EXPECT_EQ(value_of(r.text, "upper"), "1");
  EXPECT_EQ(parse_failure(std::string(kTwist) +
                          "[analysis t]\nkind = tau\nhomeo = T\ngenset = S\ncertificates = later\n")
                .key(),
            "certificates");
}

TEST(Scenario, CatalogListsFamilies) {
  const std::string cat = list_families();
  for (const char* name : {"torus-shear", "rotation", "annulus-twist", "torus-twist", "gradient",
                           "pl", "certify-rotation", "tau"}) {
    EXPECT_NE(cat.find(name), std::string::npos) << name;
  }
}

}  // namespace
