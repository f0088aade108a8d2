#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dhred/catalog.hpp"
#include "dhred/reduction.hpp"
#include "testutil.hpp"

using namespace dhred;
using namespace dhred::testutil;

namespace {

const VariableSpace kSpace = VariableSpace::with_surface(3, {"y", "z"});

AnsatzPair plane_pair() {
  return {kSpace, parse_expr("x0", kSpace), parse_expr("x3", kSpace)};
}

AnsatzPair radial_pair() {
  return {kSpace, parse_expr("x0", kSpace), parse_expr("sqrt(x1^2 + x2^2 + x3^2)", kSpace)};
}

AnsatzPair transverse_radial_pair() {
  return {kSpace, parse_expr("sqrt(x1^2 + x2^2)", kSpace), parse_expr("x0 + x3", kSpace)};
}

std::array<ExprPtr, 5> forms(const std::array<const char*, 5>& texts) {
  std::vector<std::string> yz = {"y", "z"};
  std::array<ExprPtr, 5> out;
  for (std::size_t i = 0; i < 5; ++i) out[i] = parse_expr(texts[i], yz);
  return out;
}

SamplePlan guarded_plan(const AnsatzPair& pair) {
  SamplePlan plan = default_plan();
  plan.exclusions.push_back(pair.z);
  plan.exclusions.push_back(pair.y);
  return plan;
}

}  // namespace

TEST_CASE("profile of the plane pair") {
  ReductionProfile p = profile(plane_pair());
  CHECK(p.r->is_literal(1));
  CHECK(p.q->is_zero_literal());
  CHECK(p.s->is_literal(-1));
  CHECK(p.R->is_zero_literal());
  CHECK(p.S->is_zero_literal());
}

TEST_CASE("profile of the time-radial pair") {
  ReductionProfile p = profile(radial_pair());
  SamplePlan plan = guarded_plan(radial_pair());
  CHECK(p.r->is_literal(1));
  CHECK(p.q->is_zero_literal());
  CHECK(is_zero(p.s + constant(1), plan).passed());
  CHECK(p.R->is_zero_literal());
  CHECK(is_zero(p.S + constant(2) / radial_pair().z, plan).passed());
}

TEST_CASE("profile of the transverse-radial null pair") {
  AnsatzPair pair = transverse_radial_pair();
  ReductionProfile p = profile(pair);
  SamplePlan plan = guarded_plan(pair);
  CHECK(is_zero(p.r + constant(1), plan).passed());
  CHECK(p.q->is_zero_literal());
  CHECK(p.s->is_zero_literal());
  CHECK(is_zero(p.R + constant(1) / pair.y, plan).passed());
  CHECK(p.S->is_zero_literal());
}

TEST_CASE("surface-form verification") {
  AnsatzPair pair = radial_pair();
  SamplePlan plan = guarded_plan(pair);
  ReductionProfile p =
      verify_surface_forms(profile(pair), forms({"1", "0", "-1", "0", "-2/z"}), plan);
  CHECK(p.all_verified());
  for (const auto& f : p.forms) CHECK(f.verdict.passed());

  // deliberate mismatch: shat = +1 is refuted with a witness
  ReductionProfile bad =
      verify_surface_forms(profile(plane_pair()), forms({"1", "0", "1", "0", "0"}), default_plan());
  CHECK_FALSE(bad.all_verified());
  CHECK(bad.forms[2].verdict.status == ZeroStatus::Nonzero);
  CHECK_FALSE(bad.forms[2].verdict.witness_point.empty());
  CHECK(bad.forms[0].verified);

  // transverse-radial pair: Rhat = -1/y verifies
  AnsatzPair tr = transverse_radial_pair();
  ReductionProfile ptr_prof = verify_surface_forms(
      profile(tr), forms({"-1", "0", "0", "-1/y", "0"}), guarded_plan(tr));
  CHECK(ptr_prof.all_verified());
}

TEST_CASE("dependence test") {
  AnsatzPair pair{kSpace, parse_expr("x1", kSpace), parse_expr("x2", kSpace)};
  SamplePlan plan = default_plan();

  CHECK(dependence_test(constant(5), pair, plan).pass);

  DependenceVerdict bad = dependence_test(var("x3"), pair, plan);
  CHECK_FALSE(bad.pass);
  CHECK_FALSE(bad.witness.empty());

  // box z for the time-radial pair is -2/z composed, a function of z alone
  AnsatzPair rp = radial_pair();
  ReductionProfile p = profile(rp);
  CHECK(dependence_test(p.S, rp, guarded_plan(rp)).pass);
}

TEST_CASE("classification") {
  SamplePlan plan = default_plan();
  Classification c1 = classify(profile(plane_pair()), plan);
  CHECK(c1.tag == Classification::Tag::Hyperbolic);
  CHECK(c1.negative == 64);

  // elliptic: r = -1, q = 0, s = -1 (transverse plane pair)
  AnsatzPair el{kSpace, parse_expr("x1", kSpace), parse_expr("x2", kSpace)};
  Classification c3 = classify(profile(el), plan);
  CHECK(c3.tag == Classification::Tag::Elliptic);

  AnsatzPair tr = transverse_radial_pair();
  Classification c4 = classify(profile(tr), guarded_plan(tr));
  CHECK(c4.tag == Classification::Tag::Parabolic);
  CHECK(c4.grad_norm_min > 0.5);

  // both null but q = 2: not first-order, hyperbolic with discriminant -4
  AnsatzPair null_pair{kSpace, parse_expr("x0 + x3", kSpace), parse_expr("x0 - x3", kSpace)};
  Classification cn = classify(profile(null_pair), plan);
  CHECK(cn.tag == Classification::Tag::Hyperbolic);
  CHECK(cn.disc_min == -4.0);
  CHECK(cn.disc_max == -4.0);

  // fully degenerate profile classifies as first-order
  AnsatzPair fo{kSpace, parse_expr("x0 + x3", kSpace), parse_expr("2*x0 + 2*x3", kSpace)};
  Classification cf = classify(profile(fo), plan);
  CHECK(cf.tag == Classification::Tag::FirstOrder);

  // mixed signs are reported honestly, with the per-sample sign profile
  AnsatzPair mixed{kSpace, parse_expr("x0*x1", kSpace), parse_expr("x2", kSpace)};
  Classification cm = classify(profile(mixed), plan);
  CHECK(cm.tag == Classification::Tag::Mixed);
  CHECK(cm.signs.find('+') != std::string::npos);
  CHECK(cm.signs.find('-') != std::string::npos);
  CHECK_FALSE(cm.note.empty());
}

TEST_CASE("classification is invariant under swapping y and z") {
  for (auto make : {plane_pair, radial_pair, transverse_radial_pair}) {
    AnsatzPair pair = make();
    AnsatzPair swapped{pair.space, pair.z, pair.y};
    SamplePlan plan = guarded_plan(pair);
    CHECK(classify(profile(pair), plan).tag == classify(profile(swapped), plan).tag);
  }
}

TEST_CASE("pair diagnostics") {
  SamplePlan plan = default_plan();
  CHECK(validate_pair(plane_pair(), plan).ok());

  AnsatzPair degenerate{kSpace, constant(3), parse_expr("x0", kSpace)};
  PairDiagnostics d = validate_pair(degenerate, plan);
  CHECK(d.y_gradient_zero);
  CHECK_FALSE(d.ok());

  AnsatzPair dependent{kSpace, parse_expr("x0 + x3", kSpace), parse_expr("(x0 + x3)^2", kSpace)};
  PairDiagnostics dd = validate_pair(dependent, plan);
  CHECK_FALSE(dd.independent);
  CHECK_FALSE(dd.ok());
}

TEST_CASE("reduced equation assembly") {
  SamplePlan plan = default_plan();
  ReductionProfile p =
      verify_surface_forms(profile(plane_pair()), forms({"1", "0", "-1", "0", "0"}), plan);
  REQUIRE(p.all_verified());
  ReducedPDE pde = reduced_equation(p);
  CHECK(pde.text() == "phi_yy - phi_zz = F(phi)");

  AnsatzPair rp = radial_pair();
  ReductionProfile p2 =
      verify_surface_forms(profile(rp), forms({"1", "0", "-1", "0", "-2/z"}), guarded_plan(rp));
  REQUIRE(p2.all_verified());
  CHECK(reduced_equation(p2).text() == "phi_yy - phi_zz - (2/z)*phi_z = F(phi)");

  ReductionProfile unverified = profile(plane_pair());
  CHECK_THROWS_AS(reduced_equation(unverified), std::logic_error);
}

TEST_CASE("profiles are covariant under a rational Lorentz boost") {
  // substituting a boost into the ansatz must leave the verified surface
  // forms verifiable, entry by entry
  std::map<std::string, ExprPtr> boost{
      {"x0", Rational(5, 4) * var("x0") + Rational(3, 4) * var("x3")},
      {"x3", Rational(3, 4) * var("x0") + Rational(5, 4) * var("x3")}};
  struct Case {
    AnsatzPair pair;
    std::array<const char*, 5> expect;
  };
  std::vector<Case> cases = {{plane_pair(), {"1", "0", "-1", "0", "0"}},
                             {radial_pair(), {"1", "0", "-1", "0", "-2/z"}},
                             {transverse_radial_pair(), {"-1", "0", "0", "-1/y", "0"}}};
  for (const auto& c : cases) {
    AnsatzPair boosted{kSpace, substitute(c.pair.y, boost), substitute(c.pair.z, boost)};
    ReductionProfile p =
        verify_surface_forms(profile(boosted), forms(c.expect), guarded_plan(boosted));
    CHECK(p.all_verified());
  }
}

TEST_CASE("reduced-equation coefficients reproduce the substitution identity") {
  // substituting phi(y,z) and the ansatz into box u - F(u) must match the
  // reduced equation composed with the ansatz
  std::vector<std::string> yz = {"y", "z"};
  ExprPtr phi = parse_expr("y^2*z + 3*z^2 - y", yz);
  ExprPtr F = parse_expr("u^2", std::vector<std::string>{"u"});

  struct Case {
    AnsatzPair pair;
    std::array<const char*, 5> expect;
  };
  std::vector<Case> cases = {{plane_pair(), {"1", "0", "-1", "0", "0"}},
                             {radial_pair(), {"1", "0", "-1", "0", "-2/z"}}};
  for (const auto& c : cases) {
    SamplePlan plan = guarded_plan(c.pair);
    ReductionProfile p = verify_surface_forms(profile(c.pair), forms(c.expect), plan);
    REQUIRE(p.all_verified());
    ReducedPDE pde = reduced_equation(p);

    ExprPtr u = substitute(phi, {{"y", c.pair.y}, {"z", c.pair.z}});
    ExprPtr lhs = dalembertian(u, kSpace) - substitute(F, {{"u", u}});

    ExprPtr phi_y = differentiate(phi, "y");
    ExprPtr phi_z = differentiate(phi, "z");
    ExprPtr reduced = pde.coeff[0] * differentiate(phi_y, "y") +
                      pde.coeff[1] * differentiate(phi_y, "z") +
                      pde.coeff[2] * differentiate(phi_z, "z") + pde.coeff[3] * phi_y +
                      pde.coeff[4] * phi_z - substitute(F, {{"u", phi}});
    ExprPtr rhs = substitute(reduced, {{"y", c.pair.y}, {"z", c.pair.z}});
    CHECK(is_zero(lhs - rhs, plan).passed());
  }
}
