#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dhred/eval.hpp"
#include "dhred/parse.hpp"
#include "dhred/sampling.hpp"
#include "testutil.hpp"

using namespace dhred;
using namespace dhred::testutil;

namespace {
const VariableSpace kSpace = VariableSpace::with_surface(3, {"y", "z"});
}

TEST_CASE("parsing the documented grammar") {
  ExprPtr e = parse_expr("x0^2 - x3^2", kSpace);
  CHECK(e->kind() == Kind::Sum);
  CHECK(e->children().size() == 2);

  ExprPtr r = parse_expr("sqrt(x1^2 + x2^2 + x3^2)", kSpace);
  CHECK(r->kind() == Kind::Power);
  CHECK(r->exponent() == Rational(1, 2));
  CHECK(r->base()->kind() == Kind::Sum);
  CHECK(r->base()->children().size() == 3);

  // greedy rational exponents
  CHECK(equal(parse_expr("x1^1/2", kSpace), sqrt_of(var("x1"))));
  CHECK(equal(parse_expr("x1^-3/2", kSpace), power(var("x1"), Rational(-3, 2))));
  // a '/' not followed by digits is a division
  CHECK(equal(parse_expr("x1^2/z", kSpace), power(var("x1"), Rational(2)) / var("z")));

  CHECK(equal(parse_expr("8/4", kSpace), constant(2)));
  CHECK(equal(parse_expr("-2/z", kSpace), constant(-2) / var("z")));
}

TEST_CASE("variable spaces validate their invariants") {
  CHECK(VariableSpace::with_surface(1, {"y", "z"}).spacetime.size() == 2);
  CHECK_THROWS_AS(VariableSpace::with_surface(0, {}), std::invalid_argument);
  CHECK_THROWS_AS(VariableSpace::with_surface(10, {}), std::invalid_argument);
  CHECK_THROWS_AS(VariableSpace::with_surface(3, {"y", "y"}), std::invalid_argument);
  auto all = VariableSpace::with_surface(2, {"v", "w"}).all();
  CHECK(all == std::vector<std::string>{"x0", "x1", "x2", "v", "w"});
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(parse_expr("x0 +", kSpace), ParseError);
  try {
    parse_expr("x0 +", kSpace);
  } catch (const ParseError& ex) {
    CHECK(ex.offset() == 4);
    CHECK(std::string(ex.what()).find("syntax error at offset 4") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_expr("q0 + 1", kSpace), ParseError);      // unknown identifier
  CHECK_THROWS_AS(parse_expr("x9 + 1", kSpace), ParseError);      // outside the space
  CHECK_THROWS_AS(parse_expr("tan(x0)", kSpace), ParseError);     // unknown function
  CHECK_THROWS_AS(parse_expr("x0^1/0", kSpace), ParseError);      // zero denominator
  CHECK_THROWS_AS(parse_expr("(x0 + x1", kSpace), ParseError);    // unbalanced
  CHECK_THROWS_AS(parse_expr("2x0", kSpace), ParseError);         // no implicit product
}

namespace {

// canonical-form invariants from the type contract
void check_canonical(const ExprPtr& e) {
  switch (e->kind()) {
    case Kind::Sum:
    case Kind::Product: {
      REQUIRE(e->children().size() >= 2);
      int constants = 0;
      for (std::size_t i = 0; i < e->children().size(); ++i) {
        const auto& k = e->children()[i];
        CHECK(k->kind() != e->kind());  // flattened
        if (k->is_constant()) ++constants;
        if (i + 1 < e->children().size() && e->kind() == Kind::Sum)
          CHECK(compare(k, e->children()[i + 1]) < 0);  // sorted, duplicates collected
        check_canonical(k);
      }
      CHECK(constants <= 1);
      if (e->kind() == Kind::Product)
        for (const auto& k : e->children()) CHECK_FALSE(k->is_literal(1));
      break;
    }
    case Kind::Power:
      CHECK(e->exponent() != 0);
      CHECK(e->exponent() != 1);
      check_canonical(e->base());
      break;
    case Kind::Call: check_canonical(e->arg()); break;
    default: break;
  }
}

}  // namespace

TEST_CASE("canonical form invariants hold for random expressions") {
  std::mt19937_64 rng(1234);
  std::vector<std::string> vars = {"x0", "x1", "x3"};
  for (int i = 0; i < 300; ++i) {
    ExprPtr e = random_expr(rng, vars, 3);
    check_canonical(e);
  }
}

TEST_CASE("simplification collapses polynomial identities") {
  ExprPtr e = parse_expr("(x0+x3)^2 - x0^2 - 2*x0*x3 - x3^2", kSpace);
  CHECK(e->is_zero_literal());
  CHECK(parse_expr("x0 + 0", kSpace)->kind() == Kind::Variable);
  CHECK(parse_expr("1*x0", kSpace)->kind() == Kind::Variable);
  CHECK(parse_expr("x0 - x0", kSpace)->is_zero_literal());
  CHECK(equal(parse_expr("x0*x0", kSpace), power(var("x0"), Rational(2))));
  CHECK(equal(parse_expr("sqrt(x1)*sqrt(x1)", kSpace), var("x1")));
  // sqrt(x^2) stays unevaluated (no |x| rewrite)
  ExprPtr s = parse_expr("sqrt(x1^2)", kSpace);
  CHECK(s->kind() == Kind::Power);
  CHECK(s->exponent() == Rational(1, 2));
  CHECK(equal(parse_expr("sqrt(4)", kSpace), constant(2)));
  CHECK(equal(parse_expr("(9/16)^-1/2", kSpace), constant(Rational(4, 3))));
  CHECK_THROWS(parse_expr("1/0", kSpace));
}

TEST_CASE("substitution") {
  auto yz = std::vector<std::string>{"y", "z"};
  ExprPtr e = parse_expr("y + z", yz);
  ExprPtr got = substitute(e, {{"y", var("x0")}, {"z", var("x3")}});
  CHECK(equal(got, parse_expr("x0 + x3", kSpace)));

  CHECK(equal(substitute(constant(1), {{"y", var("x0")}}), constant(1)));

  ExprPtr prod = substitute(parse_expr("y*z", yz),
                            {{"y", parse_expr("x0 - x3", kSpace)}, {"z", parse_expr("x0 + x3", kSpace)}});
  CHECK(equal(prod, parse_expr("x0^2 - x3^2", kSpace)));

  // unbound variables stay
  CHECK(equal(substitute(e, {{"y", var("x0")}}), var("x0") + var("z")));
}

TEST_CASE("differentiation basics") {
  CHECK(equal(differentiate(parse_expr("x1^2", kSpace), "x1"), constant(2) * var("x1")));
  ExprPtr ex = parse_expr("exp(x0 - x3)", kSpace);
  CHECK(equal(differentiate(ex, "x0"), ex));
  CHECK(equal(differentiate(ex, "x3"), -ex));
  CHECK(differentiate(parse_expr("x1^2", kSpace), "x2")->is_zero_literal());

  ExprPtr r = parse_expr("sqrt(x1^2 + x2^2 + x3^2)", kSpace);
  CHECK(equal(differentiate(r, "x1"), var("x1") / r));
}

TEST_CASE("derivatives agree with central finite differences at 20 random points") {
  ExprPtr r = parse_expr("sqrt(x1^2 + x2^2 + x3^2)", kSpace);
  ExprPtr dr = differentiate(r, "x1");
  std::mt19937_64 rng(77);
  const Quad h("1e-8");
  int checked = 0;
  while (checked < 20) {
    std::map<std::string, Quad> pt;
    for (const char* v : {"x1", "x2", "x3"})
      pt[v] = to_quad(random_rational(rng, 8, 4)) + Quad(3);  // keep away from the origin
    Quad exact = eval_quad(dr, pt).value;
    Quad approx = fd1(r, "x1", pt, h);
    CHECK(abs(exact - approx) <= Quad("1e-8") * (abs(exact) > 1 ? abs(exact) : Quad(1)));
    ++checked;
  }
}

TEST_CASE("differentiation is linear and satisfies the product rule (sampled)") {
  std::mt19937_64 rng(4242);
  std::vector<std::string> vars = {"x0", "x1"};
  SamplePlan plan = default_plan();
  plan.count = 32;
  int usable = 0;
  for (int i = 0; i < 40; ++i) {
    ExprPtr e1 = random_expr(rng, vars, 2);
    ExprPtr e2 = random_expr(rng, vars, 2);
    Rational a = random_rational(rng, 4, 3), b = random_rational(rng, 4, 3);
    ExprPtr lin = differentiate(constant(a) * e1 + constant(b) * e2, "x0") -
                  constant(a) * differentiate(e1, "x0") - constant(b) * differentiate(e2, "x0");
    ZeroVerdict vl = is_zero(lin, plan);
    ExprPtr prod = differentiate(e1 * e2, "x0") - differentiate(e1, "x0") * e2 -
                   e1 * differentiate(e2, "x0");
    ZeroVerdict vp = is_zero(prod, plan);
    if (vl.status == ZeroStatus::Inconclusive || vp.status == ZeroStatus::Inconclusive) continue;
    ++usable;
    CHECK(vl.passed());
    CHECK(vp.passed());
  }
  CHECK(usable >= 30);
}

TEST_CASE("print/parse round trip") {
  std::mt19937_64 rng(99);
  std::vector<std::string> vars = {"x0", "x1", "x3"};
  for (int i = 0; i < 300; ++i) {
    ExprPtr e = random_expr(rng, vars, 3);
    ExprPtr back = parse_expr(to_string(e), kSpace);
    CHECK(equal(e, back));
  }
  for (const char* text : {"x0^-1/2", "-x0 - x1", "2/3*x0", "1/x0", "sqrt(x0*x1)",
                           "(x0 + 1)^-2", "sin(cos(x0))", "ln(1 + x1^2)", "(2)^1/2"}) {
    ExprPtr e = parse_expr(text, kSpace);
    CHECK(equal(e, parse_expr(to_string(e), kSpace)));
  }
}

TEST_CASE("evaluation") {
  EvalResult v = evaluate(parse_expr("x0^2 - x3^2", kSpace), {{"x0", 3}, {"x3", 2}});
  CHECK(v.exact);
  CHECK(v.rational_value == 5);

  EvalResult s = evaluate(parse_expr("sqrt(x1^2 + x2^2)", kSpace), {{"x1", 3}, {"x2", 4}});
  CHECK_FALSE(s.exact);
  CHECK(s.precision_bits == 113);
  CHECK(abs(s.float_value - 5) < Quad("1e-30"));

  CHECK_THROWS_AS(evaluate(parse_expr("1/(x0 - x3)", kSpace), {{"x0", 1}, {"x3", 1}}), EvalError);
  try {
    evaluate(parse_expr("1/(x0 - x3)", kSpace), {{"x0", 1}, {"x3", 1}});
  } catch (const EvalError& ex) {
    CHECK(std::string(ex.what()).find("division by zero") != std::string::npos);
    CHECK(std::string(ex.what()).find("x0") != std::string::npos);  // offending subexpression
  }
  CHECK_THROWS_AS(evaluate(parse_expr("sqrt(x0)", kSpace), {{"x0", -1}}), EvalError);
  CHECK_THROWS_AS(evaluate(parse_expr("ln(x0)", kSpace), {{"x0", 0}}), EvalError);
}

TEST_CASE("evaluate after substitute equals evaluate on merged bindings") {
  std::mt19937_64 rng(31);
  std::vector<std::string> inner = {"x0", "x1"};
  for (int i = 0; i < 50; ++i) {
    // rational-only expressions: exact equality
    ExprPtr g = random_polynomial(rng, "x1", static_cast<int>(rng() % 3) + 1);
    ExprPtr f = random_polynomial(rng, "y", static_cast<int>(rng() % 3) + 1);
    ExprPtr composed = substitute(f, {{"y", g}});
    std::map<std::string, Rational> pt{{"x1", random_rational(rng, 5, 3)}};
    Rational gv = *eval_exact(g, pt);
    std::map<std::string, Rational> merged = pt;
    merged["y"] = gv;
    CHECK(*eval_exact(composed, pt) == *eval_exact(f, merged));
  }
}
