#pragma once

#include "dhred/expr.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dhred {

/// Spacetime variables x0..xn plus up to two surface variables.
struct VariableSpace {
  int n = 3;
  std::vector<std::string> spacetime;  // x0..xn
  std::vector<std::string> surface;    // subset of {y, z, v, w, vs, u}

  static VariableSpace spacetime_only(int n);
  static VariableSpace with_surface(int n, std::vector<std::string> surface);
  static VariableSpace surface_only(std::vector<std::string> surface);

  std::vector<std::string> all() const;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Parses the expression grammar:
///   expr   := ('+'|'-')? term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := base ('^' signed_rational)?
///   base   := number | identifier | function '(' expr ')' | '(' expr ')'
/// with function in {sin, cos, exp, ln, sqrt}, numbers unsigned decimal
/// integers, and exponents signed integers or fractions p/q (greedy: x^1/2
/// is x raised to one half). Identifiers must be in `allowed`.
ExprPtr parse_expr(std::string_view text, const std::vector<std::string>& allowed);

inline ExprPtr parse_expr(std::string_view text, const VariableSpace& space) {
  return parse_expr(text, space.all());
}

}  // namespace dhred
