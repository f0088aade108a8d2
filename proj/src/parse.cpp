#include "dhred/parse.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace dhred {

VariableSpace VariableSpace::spacetime_only(int n) { return with_surface(n, {}); }

VariableSpace VariableSpace::with_surface(int n, std::vector<std::string> surface) {
  if (n < 1 || n > 9) throw std::invalid_argument("spatial dimension must be in 1..9");
  VariableSpace s;
  s.n = n;
  for (int i = 0; i <= n; ++i) s.spacetime.push_back("x" + std::to_string(i));
  s.surface = std::move(surface);
  std::vector<std::string> names = s.all();
  std::sort(names.begin(), names.end());
  if (std::adjacent_find(names.begin(), names.end()) != names.end())
    throw std::invalid_argument("variable names must be pairwise distinct");
  return s;
}

VariableSpace VariableSpace::surface_only(std::vector<std::string> surface) {
  VariableSpace s;
  s.n = 0;
  s.surface = std::move(surface);
  return s;
}

std::vector<std::string> VariableSpace::all() const {
  std::vector<std::string> out = spacetime;
  out.insert(out.end(), surface.begin(), surface.end());
  return out;
}

namespace {

struct Parser {
  std::string_view text;
  std::size_t pos = 0;
  const std::vector<std::string>& allowed;

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }

  bool eof() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  [[noreturn]] void fail(const std::string& detail, std::size_t at) {
    throw ParseError("syntax error at offset " + std::to_string(at) + ": " + detail, at);
  }

  Int read_digits() {
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail("malformed number", start);
    return Int(std::string(text.substr(start, pos - start)));
  }

  Rational read_signed_rational() {
    skip_ws();
    std::size_t start = pos;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
      negative = text[pos] == '-';
      ++pos;
    }
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      fail("expected an exponent", pos);
    Int num = read_digits();
    Int den = 1;
    if (pos + 1 < text.size() && text[pos] == '/' &&
        std::isdigit(static_cast<unsigned char>(text[pos + 1]))) {
      ++pos;
      den = read_digits();
      if (den == 0) fail("malformed number: zero denominator", start);
    }
    Rational r(num, den);
    return negative ? -r : r;
  }

  ExprPtr parse_base() {
    skip_ws();
    if (pos >= text.size()) fail("expected a term", pos);
    char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return constant(Rational(read_digits()));
    }
    if (c == '(') {
      ++pos;
      ExprPtr e = parse_sum();
      skip_ws();
      if (pos >= text.size() || text[pos] != ')') fail("expected ')'", pos);
      ++pos;
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos;
      while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                   text[pos] == '_'))
        ++pos;
      std::string name(text.substr(start, pos - start));
      static const std::vector<std::pair<std::string, Fn>> fns = {
          {"sin", Fn::Sin}, {"cos", Fn::Cos}, {"exp", Fn::Exp}, {"ln", Fn::Ln}};
      skip_ws();
      bool is_call = pos < text.size() && text[pos] == '(';
      if (is_call) {
        ++pos;
        ExprPtr a = parse_sum();
        skip_ws();
        if (pos >= text.size() || text[pos] != ')') fail("expected ')'", pos);
        ++pos;
        if (name == "sqrt") return sqrt_of(a);
        for (const auto& [fname, f] : fns)
          if (fname == name) return func(f, a);
        throw ParseError("unknown function '" + name + "' at offset " + std::to_string(start),
                         start);
      }
      if (std::find(allowed.begin(), allowed.end(), name) == allowed.end())
        throw ParseError("unknown identifier '" + name + "' at offset " + std::to_string(start),
                         start);
      return var(name);
    }
    fail("expected a term", pos);
  }

  ExprPtr parse_factor() {
    ExprPtr base = parse_base();
    skip_ws();
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      Rational exp = read_signed_rational();
      return power(std::move(base), std::move(exp));
    }
    return base;
  }

  ExprPtr parse_term() {
    ExprPtr e = parse_factor();
    while (true) {
      skip_ws();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        e = e * parse_factor();
      } else if (pos < text.size() && text[pos] == '/') {
        ++pos;
        e = e / parse_factor();
      } else {
        return e;
      }
    }
  }

  ExprPtr parse_sum() {
    skip_ws();
    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      negative = text[pos] == '-';
      ++pos;
    }
    ExprPtr e = parse_term();
    if (negative) e = -e;
    while (true) {
      skip_ws();
      if (pos < text.size() && text[pos] == '+') {
        ++pos;
        e = e + parse_term();
      } else if (pos < text.size() && text[pos] == '-') {
        ++pos;
        e = e - parse_term();
      } else {
        return e;
      }
    }
  }
};

}  // namespace

ExprPtr parse_expr(std::string_view text, const std::vector<std::string>& allowed) {
  Parser p{text, 0, allowed};
  ExprPtr e = p.parse_sum();
  p.skip_ws();
  if (p.pos != text.size())
    throw ParseError("syntax error at offset " + std::to_string(p.pos) + ": unexpected input",
                     p.pos);
  return e;
}

}  // namespace dhred
