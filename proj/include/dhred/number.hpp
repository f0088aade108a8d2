#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace dhred {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// 128-bit binary float (113-bit mantissa); the working precision for all
/// inexact evaluation.
using Quad = boost::multiprecision::cpp_bin_float_quad;

inline Quad to_quad(const Rational& r) { return r.convert_to<Quad>(); }

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

/// Converts an integral Rational to long; throws std::overflow_error if it
/// does not fit or is not integral.
long to_long_exact(const Rational& r);

/// "p" or "p/q", denominator always positive.
std::string rat_str(const Rational& r);

/// Deterministic decimal rendering with 25 significant digits.
std::string quad_str(const Quad& q);

/// Exact non-negative integer q-th root, or nullopt when x is not a perfect
/// q-th power. x must be >= 0.
std::optional<Int> integer_root(const Int& x, unsigned q);

/// base^exp as an exact rational when representable (integer exponents
/// always; fractional exponents only when base is a perfect power).
/// Returns nullopt otherwise. base == 0 with exp < 0 is the caller's error.
std::optional<Rational> exact_pow(const Rational& base, const Rational& exp);

/// base^k for integer k (k may be negative; base must be nonzero then).
Rational rational_pow(const Rational& base, long k);

}  // namespace dhred
