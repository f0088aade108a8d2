#pragma once

#include "dhred/expr.hpp"
#include "dhred/parse.hpp"

#include <array>
#include <string>
#include <vector>

namespace dhred {

/// Orthonormal Minkowski frame for n = 3: one timelike vector a and three
/// spacelike vectors b, c, d with a.a = 1, b.b = c.c = d.d = -1 and all
/// cross contractions zero (checked exactly in rational arithmetic).
struct Frame {
  std::array<std::array<Rational, 4>, 4> rows;  // a, b, c, d

  const std::array<Rational, 4>& a() const { return rows[0]; }
  const std::array<Rational, 4>& b() const { return rows[1]; }
  const std::array<Rational, 4>& c() const { return rows[2]; }
  const std::array<Rational, 4>& d() const { return rows[3]; }

  /// Exact Gram-matrix violations; empty when the frame is orthonormal.
  std::vector<std::string> violations() const;
};

Rational frame_mdot(const std::array<Rational, 4>& x, const std::array<Rational, 4>& y);

Frame standard_frame();

/// Frame with a and d mixed by a hyperbolic rotation given as an exact
/// (cosh, sinh) pair; throws std::invalid_argument unless ch^2 - sh^2 == 1.
Frame boosted_frame(const Rational& ch, const Rational& sh);

/// Linear form sum_mu vec_mu * x_mu as an expression.
ExprPtr linear_form(const std::array<Rational, 4>& vec, const VariableSpace& space);

}  // namespace dhred
