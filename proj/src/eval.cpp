#include "dhred/eval.hpp"

namespace dhred {

std::optional<Rational> eval_exact(const ExprPtr& e, const std::map<std::string, Rational>& point) {
  switch (e->kind()) {
    case Kind::Constant: return e->value();
    case Kind::Variable: {
      auto it = point.find(e->name());
      if (it == point.end()) throw EvalError("unbound variable", e->name());
      return it->second;
    }
    case Kind::Sum: {
      Rational acc = 0;
      for (const auto& k : e->children()) {
        auto v = eval_exact(k, point);
        if (!v) return std::nullopt;
        acc += *v;
      }
      return acc;
    }
    case Kind::Product: {
      Rational acc = 1;
      for (const auto& k : e->children()) {
        auto v = eval_exact(k, point);
        if (!v) return std::nullopt;
        acc *= *v;
      }
      return acc;
    }
    case Kind::Power: {
      auto b = eval_exact(e->base(), point);
      if (!b) return std::nullopt;
      if (is_integer(e->exponent())) {
        long k = to_long_exact(e->exponent());
        if (*b == 0 && k < 0) throw EvalError("division by zero", to_string(e));
        if (*b == 0) return Rational(0);
        return rational_pow(*b, k);
      }
      if (*b == 0 && numerator(e->exponent()) < 0)
        throw EvalError("division by zero", to_string(e));
      return exact_pow(*b, e->exponent());  // nullopt when not a perfect power
    }
    case Kind::Call: return std::nullopt;
  }
  return std::nullopt;
}

namespace {

Quad eval_quad_rec(const ExprPtr& e, const std::map<std::string, Quad>& point, Quad& max_abs) {
  Quad v;
  switch (e->kind()) {
    case Kind::Constant: v = to_quad(e->value()); break;
    case Kind::Variable: {
      auto it = point.find(e->name());
      if (it == point.end()) throw EvalError("unbound variable", e->name());
      v = it->second;
      break;
    }
    case Kind::Sum: {
      v = 0;
      for (const auto& k : e->children()) v += eval_quad_rec(k, point, max_abs);
      break;
    }
    case Kind::Product: {
      v = 1;
      for (const auto& k : e->children()) v *= eval_quad_rec(k, point, max_abs);
      break;
    }
    case Kind::Power: {
      Quad b = eval_quad_rec(e->base(), point, max_abs);
      const Rational& ex = e->exponent();
      if (is_integer(ex) && abs(numerator(ex)) <= 1000000) {
        long k = to_long_exact(ex);
        if (b == 0 && k < 0) throw EvalError("division by zero", to_string(e));
        v = pow(b, static_cast<int>(k));
      } else {
        if (b < 0) throw EvalError("fractional power of a negative value", to_string(e));
        if (b == 0) {
          if (numerator(ex) < 0) throw EvalError("division by zero", to_string(e));
          v = 0;
        } else {
          v = pow(b, to_quad(ex));
        }
      }
      break;
    }
    case Kind::Call: {
      Quad a = eval_quad_rec(e->arg(), point, max_abs);
      switch (e->fn()) {
        case Fn::Sin: v = sin(a); break;
        case Fn::Cos: v = cos(a); break;
        case Fn::Exp: v = exp(a); break;
        case Fn::Ln:
          if (a <= 0) throw EvalError("logarithm of a non-positive value", to_string(e));
          v = log(a);
          break;
      }
      break;
    }
  }
  Quad av = abs(v);
  if (av > max_abs) max_abs = av;
  return v;
}

}  // namespace

QuadValue eval_quad(const ExprPtr& e, const std::map<std::string, Quad>& point) {
  QuadValue out{0, 0};
  out.value = eval_quad_rec(e, point, out.max_abs_subterm);
  return out;
}

std::map<std::string, Quad> to_quad_point(const std::map<std::string, Rational>& point) {
  std::map<std::string, Quad> qp;
  for (const auto& [k, v] : point) qp.emplace(k, to_quad(v));
  return qp;
}

EvalResult evaluate(const ExprPtr& e, const std::map<std::string, Rational>& point) {
  EvalResult r;
  if (is_rational_expr(e)) {
    auto v = eval_exact(e, point);
    if (v) {
      r.exact = true;
      r.rational_value = *v;
      r.float_value = to_quad(*v);
      return r;
    }
  }
  r.exact = false;
  r.precision_bits = std::numeric_limits<Quad>::digits;
  r.float_value = eval_quad(e, to_quad_point(point)).value;
  return r;
}

}  // namespace dhred
