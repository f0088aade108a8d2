#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dhred/catalog.hpp"
#include "dhred/lift.hpp"
#include "testutil.hpp"

using namespace dhred;
using namespace dhred::testutil;

namespace {

const std::vector<std::string> kYZ = {"y", "z"};

LiftCase entry_lift(int index, const char* phi, const char* F, int samples = 64) {
  auto entries = catalog();
  const CatalogEntry& e = entries.at(index - 1);
  LiftCase lc;
  lc.pair = e.build(standard_frame());
  lc.plan = default_plan();
  lc.plan.count = samples;
  for (const auto& ex : composed_exclusions(e, lc.pair)) lc.plan.exclusions.push_back(ex);
  lc.surface_exclusions = e.surface_exclusions;
  const auto& f = e.expected_forms;
  lc.reduced_coeff = {f[0], constant(2) * f[1], f[2], f[3], f[4]};
  lc.phi = parse_expr(phi, kYZ);
  lc.F = parse_expr(F, std::vector<std::string>{"u"});
  return lc;
}

}  // namespace

TEST_CASE("frames satisfy the Gram conditions exactly") {
  CHECK(standard_frame().violations().empty());
  CHECK(boosted_frame(Rational(5, 4), Rational(3, 4)).violations().empty());
  CHECK(boosted_frame(Rational(13, 12), Rational(5, 12)).violations().empty());
  CHECK_THROWS_AS(boosted_frame(Rational(1), Rational(1)), std::invalid_argument);

  Frame tampered = standard_frame();
  tampered.rows[1] = {0, 1, 1, 0};  // b is no longer unit spacelike
  auto issues = tampered.violations();
  CHECK_FALSE(issues.empty());
  CHECK(issues.front().find("bb") != std::string::npos);
}

TEST_CASE("catalog entries and their expectations") {
  auto entries = catalog();
  REQUIRE(entries.size() == 4);
  CHECK(entries[0].expected_class == Classification::Tag::Hyperbolic);
  CHECK(entries[1].expected_class == Classification::Tag::Hyperbolic);
  CHECK(entries[2].expected_class == Classification::Tag::Elliptic);
  CHECK(entries[3].expected_class == Classification::Tag::Parabolic);

  // standard frame: entry 1 reduces to the plain 2D wave equation
  SamplePlan plan = default_plan();
  AnsatzPair p1 = entries[0].build(standard_frame());
  ReductionProfile prof = verify_surface_forms(profile(p1), entries[0].expected_forms, plan);
  REQUIRE(prof.all_verified());
  CHECK(reduced_equation(prof).text() == "phi_yy - phi_zz = F(phi)");
}

TEST_CASE("the catalog passes under the standard and boosted frames") {
  for (const char* name : {"standard", "boosted"}) {
    Frame f = std::string(name) == "standard" ? standard_frame()
                                              : boosted_frame(Rational(5, 4), Rational(3, 4));
    CatalogReport rep = run_catalog(f, name, default_plan());
    CHECK(rep.pass);
    REQUIRE(rep.entries.size() == 4);
    for (const auto& e : rep.entries) {
      CHECK(e.pass);
      CHECK(e.reduced_available);
    }
    CHECK(rep.entries[0].reduced_text == "phi_yy - phi_zz = F(phi)");
    CHECK(rep.entries[1].reduced_text == "phi_yy - phi_zz - (2/z)*phi_z = F(phi)");
    CHECK(rep.entries[2].reduced_text == "-phi_yy - phi_zz = F(phi)");
    CHECK(rep.entries[3].reduced_text == "-phi_yy - (1/y)*phi_y = F(phi)");
  }
}

TEST_CASE("a wrong expectation fails the suite naming the entry") {
  auto entries = catalog();
  CatalogEntry tampered = entries[0];
  tampered.expected_forms[2] = constant(1);  // shat = +1 instead of -1
  AnsatzPair pair = tampered.build(standard_frame());
  ReductionProfile prof =
      verify_surface_forms(profile(pair), tampered.expected_forms, default_plan());
  CHECK_FALSE(prof.all_verified());
  CHECK(prof.forms[2].verdict.status == ZeroStatus::Nonzero);

  // and a tampered frame is reported by the runner itself
  Frame bad = standard_frame();
  bad.rows[1] = {0, 1, 1, 0};
  CatalogReport rep = run_catalog(bad, "tampered", default_plan());
  CHECK_FALSE(rep.pass);
  CHECK(rep.entries.front().failure.find("frame") != std::string::npos);
}

TEST_CASE("the shifted entry verifies for several shift functions") {
  // the expected reduced equation is shift-independent: the shifted direction
  // is null, so the second derivative never enters
  std::vector<std::string> uvar = {"u"};
  for (const char* shift : {"u^2", "sin(u)", "u^3 - 2*u"}) {
    auto entries = catalog(parse_expr(shift, uvar));
    const CatalogEntry& e3 = entries.at(2);
    AnsatzPair pair = e3.build(standard_frame());
    ReductionProfile prof = verify_surface_forms(profile(pair), e3.expected_forms, default_plan());
    CHECK(prof.all_verified());
    CHECK(classify(prof, default_plan()).tag == Classification::Tag::Elliptic);
  }
}

TEST_CASE("polynomial lift through the plane pair is exactly zero") {
  LiftReport rep = lift_and_check(entry_lift(1, "y^2 + z^2", "0"));
  CHECK(rep.precondition_ok);
  CHECK(rep.pass);
  CHECK(rep.exact);
  CHECK(rep.max_residual == "0");
}

TEST_CASE("sine lift through the plane pair") {
  LiftReport rep = lift_and_check(entry_lift(1, "sin(y + z)", "0", 100));
  CHECK(rep.precondition_ok);
  CHECK(rep.pass);
  CHECK(rep.max_residual_value < 1e-10);
  CHECK(rep.samples == 100);
}

TEST_CASE("radial lift: travelling wave over r") {
  // phi = (y - z)/z composed with the time-radial pair gives (x0 - r)/r
  LiftReport rep = lift_and_check(entry_lift(2, "(y - z)/z", "0", 100));
  CHECK(rep.precondition_ok);
  CHECK(rep.reduced_check.status == ZeroStatus::ProvedZero);
  CHECK(rep.pass);
  CHECK(rep.max_residual_value < 1e-10);
}

TEST_CASE("a phi violating the reduced equation is a precondition failure, not a lift failure") {
  LiftReport rep = lift_and_check(entry_lift(1, "y^2", "0"));
  CHECK_FALSE(rep.precondition_ok);
  CHECK_FALSE(rep.pass);
  CHECK(rep.note.find("precondition") != std::string::npos);
  CHECK(rep.samples == 0);  // the lift itself never ran
}

TEST_CASE("nonzero right side: exponential nonlinearity balances a polynomial source") {
  // u = y^2 + z^2 with F(u) = 0 works; with F(u) = u it must fail
  LiftCase lc = entry_lift(1, "y^2 + z^2", "u");
  LiftReport rep = lift_and_check(lc);
  CHECK_FALSE(rep.precondition_ok);
}
