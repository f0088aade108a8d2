#pragma once

#include "dhred/number.hpp"

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace dhred {

// Immutable symbolic expression trees. Every node is produced by a smart
// constructor that keeps the tree in canonical form: constants folded, sums
// and products flattened, sorted and collected, products distributed over
// sums, integer powers of sums expanded, identity elements absorbed.
//
// sqrt(e) is represented as e^(1/2); the rewrite sqrt(x^2) -> |x| is never
// applied (a nested power merges only when that is valid on the principal
// domain).

enum class Kind : std::uint8_t { Constant, Variable, Power, Call, Product, Sum };
enum class Fn : std::uint8_t { Sin, Cos, Exp, Ln };

const char* fn_name(Fn f);

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

class Expr {
 public:
  Kind kind() const { return kind_; }
  Fn fn() const { return fn_; }

  /// Constant value (Kind::Constant) or exponent (Kind::Power).
  const Rational& value() const { return num_; }
  const Rational& exponent() const { return num_; }
  const std::string& name() const { return name_; }
  const std::vector<ExprPtr>& children() const { return kids_; }
  const ExprPtr& base() const { return kids_[0]; }
  const ExprPtr& arg() const { return kids_[0]; }

  bool is_constant() const { return kind_ == Kind::Constant; }
  bool is_literal(long v) const { return kind_ == Kind::Constant && num_ == v; }
  bool is_zero_literal() const { return is_literal(0); }

  // internal: use the smart constructors below
  struct Raw {};
  Expr(Raw, Kind k, Fn f, Rational num, std::string name, std::vector<ExprPtr> kids)
      : kind_(k), fn_(f), num_(std::move(num)), name_(std::move(name)), kids_(std::move(kids)) {}

 private:
  Kind kind_;
  Fn fn_ = Fn::Sin;
  Rational num_;
  std::string name_;
  std::vector<ExprPtr> kids_;
};

// ---- smart constructors ----------------------------------------------------

ExprPtr constant(Rational v);
ExprPtr constant(long v);
ExprPtr var(std::string name);
ExprPtr sum(std::vector<ExprPtr> terms);
ExprPtr product(std::vector<ExprPtr> factors);
ExprPtr power(ExprPtr base, Rational exp);
ExprPtr func(Fn f, ExprPtr arg);

ExprPtr sqrt_of(ExprPtr e);
ExprPtr sin_of(ExprPtr e);
ExprPtr cos_of(ExprPtr e);
ExprPtr exp_of(ExprPtr e);
ExprPtr ln_of(ExprPtr e);

ExprPtr operator+(const ExprPtr& a, const ExprPtr& b);
ExprPtr operator-(const ExprPtr& a, const ExprPtr& b);
ExprPtr operator-(const ExprPtr& a);
ExprPtr operator*(const ExprPtr& a, const ExprPtr& b);
ExprPtr operator/(const ExprPtr& a, const ExprPtr& b);
ExprPtr operator*(const Rational& c, const ExprPtr& e);

// ---- structure -------------------------------------------------------------

/// Total order over canonical expressions; 0 iff structurally identical.
int compare(const Expr& a, const Expr& b);
inline int compare(const ExprPtr& a, const ExprPtr& b) { return compare(*a, *b); }
inline bool equal(const ExprPtr& a, const ExprPtr& b) { return compare(*a, *b) == 0; }

struct ExprLess {
  bool operator()(const ExprPtr& a, const ExprPtr& b) const { return compare(*a, *b) < 0; }
};

/// Renders an expression in the input grammar; parse(to_string(e)) == e.
std::string to_string(const Expr& e);
inline std::string to_string(const ExprPtr& e) { return to_string(*e); }
std::ostream& operator<<(std::ostream& os, const Expr& e);

void collect_variables(const Expr& e, std::set<std::string>& out);
std::set<std::string> variables(const Expr& e);
inline std::set<std::string> variables(const ExprPtr& e) { return variables(*e); }
bool contains_variable(const Expr& e, const std::string& name);

/// True when the expression uses only field operations and integer powers,
/// i.e. exact rational evaluation is possible.
bool is_rational_expr(const Expr& e);
inline bool is_rational_expr(const ExprPtr& e) { return is_rational_expr(*e); }

// ---- calculus --------------------------------------------------------------

/// Simultaneous substitution; unbound variables stay untouched.
ExprPtr substitute(const ExprPtr& e, const std::map<std::string, ExprPtr>& bindings);

/// Exact partial derivative, canonically simplified.
ExprPtr differentiate(const ExprPtr& e, const std::string& name);

}  // namespace dhred
