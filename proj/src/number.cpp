#include "dhred/number.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace dhred {

long to_long_exact(const Rational& r) {
  if (!is_integer(r)) throw std::overflow_error("not an integer: " + rat_str(r));
  const Int& n = numerator(r);
  if (n > std::numeric_limits<long>::max() || n < std::numeric_limits<long>::min())
    throw std::overflow_error("integer out of range: " + rat_str(r));
  return n.convert_to<long>();
}

std::string rat_str(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

std::string quad_str(const Quad& q) {
  std::ostringstream oss;
  oss << std::setprecision(25) << q;
  return oss.str();
}

std::optional<Int> integer_root(const Int& x, unsigned q) {
  if (x < 0 || q == 0) return std::nullopt;
  if (x == 0 || x == 1 || q == 1) return x;
  // binary search on the bit length estimate
  Int lo = 1;
  Int hi = Int(1) << (msb(x) / q + 2);
  while (lo < hi) {
    Int mid = (lo + hi + 1) >> 1;
    Int p = 1;
    for (unsigned i = 0; i < q && p <= x; ++i) p *= mid;
    if (p <= x)
      lo = mid;
    else
      hi = mid - 1;
  }
  Int p = 1;
  for (unsigned i = 0; i < q; ++i) p *= lo;
  if (p == x) return lo;
  return std::nullopt;
}

Rational rational_pow(const Rational& base, long k) {
  if (k == 0) return 1;
  bool inv = k < 0;
  unsigned long m = inv ? static_cast<unsigned long>(-(k + 1)) + 1ul : static_cast<unsigned long>(k);
  if (m > 1000000) throw std::overflow_error("exponent too large: " + std::to_string(k));
  if (inv && base == 0) throw std::domain_error("0 raised to a negative power");
  Int num = pow(numerator(base), static_cast<unsigned>(m));
  Int den = pow(denominator(base), static_cast<unsigned>(m));
  if (!inv) return Rational(num, den);
  // the two-argument constructor requires a positive denominator
  if (num < 0) return Rational(-den, -num);
  return Rational(den, num);
}

std::optional<Rational> exact_pow(const Rational& base, const Rational& exp) {
  if (is_integer(exp)) return rational_pow(base, to_long_exact(exp));
  if (base == 0) return numerator(exp) > 0 ? std::optional<Rational>(0) : std::nullopt;
  if (base == 1) return Rational(1);
  const Int& q = denominator(exp);
  if (q > 64) return std::nullopt;
  unsigned uq = q.convert_to<unsigned>();
  Int bn = numerator(base), bd = denominator(base);
  bool neg = bn < 0;
  if (neg) {
    if (uq % 2 == 0) return std::nullopt;  // even root of a negative value
    bn = -bn;
  }
  auto rn = integer_root(bn, uq);
  auto rd = integer_root(bd, uq);
  if (!rn || !rd) return std::nullopt;
  Rational root(neg ? -*rn : *rn, *rd);
  long p = 0;
  try {
    p = to_long_exact(Rational(numerator(exp)));
  } catch (const std::overflow_error&) {
    return std::nullopt;
  }
  return rational_pow(root, p);
}

}  // namespace dhred
