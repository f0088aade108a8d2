#pragma once

#include "dhred/expr.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace dhred {

/// Domain error during evaluation (division by zero, fractional power of a
/// negative value, logarithm of a non-positive value, unbound variable).
/// Carries the offending subexpression in the message.
class EvalError : public std::runtime_error {
 public:
  EvalError(const std::string& what, std::string offending)
      : std::runtime_error(what + " in " + offending), offending_(std::move(offending)) {}
  const std::string& offending() const { return offending_; }

 private:
  std::string offending_;
};

/// Exact rational evaluation. Returns nullopt when the expression requires
/// inexact arithmetic at this point (function call or non-representable
/// fractional power); throws EvalError on domain errors.
std::optional<Rational> eval_exact(const ExprPtr& e, const std::map<std::string, Rational>& point);

struct QuadValue {
  Quad value;
  /// Largest |subterm| seen while evaluating; used to scale relative
  /// zero-tolerances.
  Quad max_abs_subterm;
};

/// 128-bit floating-point evaluation; throws EvalError on domain errors.
QuadValue eval_quad(const ExprPtr& e, const std::map<std::string, Quad>& point);

struct EvalResult {
  bool exact = false;
  Rational rational_value;
  Quad float_value;
  int precision_bits = 0;  // 113 on the floating path
};

/// Evaluates exactly when the expression is rational, otherwise at 128-bit
/// float precision.
EvalResult evaluate(const ExprPtr& e, const std::map<std::string, Rational>& point);

std::map<std::string, Quad> to_quad_point(const std::map<std::string, Rational>& point);

}  // namespace dhred
