#include "dhred/frame.hpp"

#include <stdexcept>

namespace dhred {

Rational frame_mdot(const std::array<Rational, 4>& x, const std::array<Rational, 4>& y) {
  Rational acc = x[0] * y[0];
  for (std::size_t i = 1; i < 4; ++i) acc -= x[i] * y[i];
  return acc;
}

std::vector<std::string> Frame::violations() const {
  static const char* names = "abcd";
  std::vector<std::string> out;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i; j < 4; ++j) {
      Rational got = frame_mdot(rows[i], rows[j]);
      Rational want = i != j ? Rational(0) : (i == 0 ? Rational(1) : Rational(-1));
      if (got != want) {
        std::string msg;
        msg += names[i];
        msg += names[j];
        msg += " = " + rat_str(got) + ", expected " + rat_str(want);
        out.push_back(msg);
      }
    }
  return out;
}

Frame standard_frame() {
  Frame f{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) f.rows[i][j] = i == j ? 1 : 0;
  return f;
}

Frame boosted_frame(const Rational& ch, const Rational& sh) {
  if (ch * ch - sh * sh != 1)
    throw std::invalid_argument("invalid rapidity pair: cosh^2 - sinh^2 != 1 for (" + rat_str(ch) +
                                ", " + rat_str(sh) + ")");
  Frame f = standard_frame();
  f.rows[0] = {ch, 0, 0, sh};  // a
  f.rows[3] = {sh, 0, 0, ch};  // d
  return f;
}

ExprPtr linear_form(const std::array<Rational, 4>& vec, const VariableSpace& space) {
  if (space.spacetime.size() != 4)
    throw std::invalid_argument("frames require n = 3 (four spacetime variables)");
  std::vector<ExprPtr> terms;
  for (std::size_t mu = 0; mu < 4; ++mu)
    terms.push_back(constant(vec[mu]) * var(space.spacetime[mu]));
  return sum(std::move(terms));
}

}  // namespace dhred
