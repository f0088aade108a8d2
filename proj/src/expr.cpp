#include "dhred/expr.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace dhred {

namespace {

ExprPtr raw(Kind k, Fn f, Rational num, std::string name, std::vector<ExprPtr> kids) {
  return std::make_shared<Expr>(Expr::Raw{}, k, f, std::move(num), std::move(name),
                                std::move(kids));
}

const ExprPtr& zero_expr() {
  static const ExprPtr z = raw(Kind::Constant, Fn::Sin, 0, {}, {});
  return z;
}
const ExprPtr& one_expr() {
  static const ExprPtr o = raw(Kind::Constant, Fn::Sin, 1, {}, {});
  return o;
}

int rank(Kind k) { return static_cast<int>(k); }

// sums are expanded under integer powers up to this exponent; beyond it the
// power stays an opaque atom (zero detection falls back to sampling)
constexpr long kMaxSumExpansion = 64;

// term = coeff * mono where mono is a constant-free canonical product part
// (nullptr for a pure constant term)
struct TermParts {
  Rational coeff;
  ExprPtr mono;  // nullptr, or Variable/Power/Call/Sum-atom/Product
};

TermParts decompose_term(const ExprPtr& e) {
  if (e->kind() == Kind::Constant) return {e->value(), nullptr};
  if (e->kind() == Kind::Product) {
    const auto& kids = e->children();
    if (kids.front()->kind() == Kind::Constant) {
      std::vector<ExprPtr> rest(kids.begin() + 1, kids.end());
      if (rest.size() == 1) return {kids.front()->value(), rest.front()};
      return {kids.front()->value(), raw(Kind::Product, Fn::Sin, 0, {}, std::move(rest))};
    }
  }
  return {Rational(1), e};
}

std::pair<ExprPtr, Rational> decompose_factor(const ExprPtr& e) {
  if (e->kind() == Kind::Power) return {e->base(), e->exponent()};
  return {e, Rational(1)};
}

ExprPtr make_term(const Rational& c, const ExprPtr& mono) {
  if (c == 0) return zero_expr();
  if (!mono) return constant(c);
  if (c == 1) return mono;
  std::vector<ExprPtr> kids;
  if (mono->kind() == Kind::Product) {
    kids.reserve(mono->children().size() + 1);
    kids.push_back(constant(c));
    kids.insert(kids.end(), mono->children().begin(), mono->children().end());
  } else {
    kids = {constant(c), mono};
  }
  return raw(Kind::Product, Fn::Sin, 0, {}, std::move(kids));
}

}  // namespace

const char* fn_name(Fn f) {
  switch (f) {
    case Fn::Sin: return "sin";
    case Fn::Cos: return "cos";
    case Fn::Exp: return "exp";
    case Fn::Ln: return "ln";
  }
  return "?";
}

int compare(const Expr& a, const Expr& b) {
  if (&a == &b) return 0;
  if (rank(a.kind()) != rank(b.kind())) return rank(a.kind()) < rank(b.kind()) ? -1 : 1;
  switch (a.kind()) {
    case Kind::Constant:
      return a.value() == b.value() ? 0 : (a.value() < b.value() ? -1 : 1);
    case Kind::Variable:
      return a.name().compare(b.name());
    case Kind::Power: {
      int c = compare(*a.base(), *b.base());
      if (c != 0) return c;
      return a.exponent() == b.exponent() ? 0 : (a.exponent() < b.exponent() ? -1 : 1);
    }
    case Kind::Call: {
      if (a.fn() != b.fn()) return static_cast<int>(a.fn()) < static_cast<int>(b.fn()) ? -1 : 1;
      return compare(*a.arg(), *b.arg());
    }
    case Kind::Product:
    case Kind::Sum: {
      const auto& ka = a.children();
      const auto& kb = b.children();
      if (ka.size() != kb.size()) return ka.size() < kb.size() ? -1 : 1;
      for (std::size_t i = 0; i < ka.size(); ++i) {
        int c = compare(*ka[i], *kb[i]);
        if (c != 0) return c;
      }
      return 0;
    }
  }
  return 0;
}

ExprPtr constant(Rational v) {
  if (v == 0) return zero_expr();
  if (v == 1) return one_expr();
  return raw(Kind::Constant, Fn::Sin, std::move(v), {}, {});
}
ExprPtr constant(long v) { return constant(Rational(v)); }

ExprPtr var(std::string name) {
  if (name.empty()) throw std::invalid_argument("empty variable name");
  return raw(Kind::Variable, Fn::Sin, 0, std::move(name), {});
}

ExprPtr sum(std::vector<ExprPtr> terms) {
  Rational const_acc = 0;
  std::map<ExprPtr, Rational, ExprLess> acc;
  std::vector<ExprPtr> stack(terms.rbegin(), terms.rend());
  while (!stack.empty()) {
    ExprPtr t = stack.back();
    stack.pop_back();
    if (t->kind() == Kind::Sum) {
      for (auto it = t->children().rbegin(); it != t->children().rend(); ++it) stack.push_back(*it);
      continue;
    }
    TermParts p = decompose_term(t);
    if (!p.mono)
      const_acc += p.coeff;
    else
      acc[p.mono] += p.coeff;
  }
  std::vector<ExprPtr> out;
  if (const_acc != 0) out.push_back(constant(const_acc));
  for (const auto& [mono, c] : acc)
    if (c != 0) out.push_back(make_term(c, mono));
  if (out.empty()) return zero_expr();
  if (out.size() == 1) return out.front();
  std::sort(out.begin(), out.end(), ExprLess{});
  return raw(Kind::Sum, Fn::Sin, 0, {}, std::move(out));
}

ExprPtr product(std::vector<ExprPtr> factors) {
  Rational coeff = 1;
  std::map<ExprPtr, Rational, ExprLess> bases;
  std::vector<ExprPtr> stack(factors.rbegin(), factors.rend());
  while (!stack.empty()) {
    ExprPtr f = stack.back();
    stack.pop_back();
    if (f->kind() == Kind::Product) {
      for (auto it = f->children().rbegin(); it != f->children().rend(); ++it) stack.push_back(*it);
      continue;
    }
    if (f->kind() == Kind::Constant) {
      if (f->value() == 0) return zero_expr();
      coeff *= f->value();
      continue;
    }
    auto [b, e] = decompose_factor(f);
    bases[b] += e;
  }

  // rebuild merged powers; a merge may collapse to a constant or reopen a
  // product/sum (e.g. sqrt(x*y)^2), so iterate until stable
  std::vector<ExprPtr> atoms;
  std::vector<ExprPtr> sums;
  bool redo = true;
  while (redo) {
    redo = false;
    atoms.clear();
    sums.clear();
    std::vector<ExprPtr> reopened;
    for (const auto& [b, e] : bases) {
      if (e == 0) continue;
      if (b->kind() == Kind::Sum && is_integer(e) && e > 0 && e <= kMaxSumExpansion) {
        // expand by distribution below rather than re-entering power()
        long reps = to_long_exact(e);
        for (long i = 0; i < reps; ++i) sums.push_back(b);
        continue;
      }
      if (b->kind() == Kind::Sum && is_integer(e) && e > kMaxSumExpansion) {
        atoms.push_back(raw(Kind::Power, Fn::Sin, e, {}, {b}));
        continue;
      }
      ExprPtr p = power(b, e);
      if (p->kind() == Kind::Constant) {
        if (p->value() == 0) return zero_expr();
        coeff *= p->value();
      } else if (p->kind() == Kind::Product) {
        reopened.push_back(p);
      } else if (p->kind() == Kind::Sum) {
        sums.push_back(p);
      } else {
        atoms.push_back(p);
      }
    }
    if (!reopened.empty()) {
      redo = true;
      std::map<ExprPtr, Rational, ExprLess> next;
      for (const auto& a : atoms) {
        auto [b, e] = decompose_factor(a);
        next[b] += e;
      }
      for (const auto& s : sums) next[s] += 1;
      for (const auto& r : reopened)
        for (const auto& k : r->children()) {
          if (k->kind() == Kind::Constant) {
            coeff *= k->value();
            continue;
          }
          auto [b, e] = decompose_factor(k);
          next[b] += e;
        }
      bases = std::move(next);
    }
  }

  if (coeff == 0) return zero_expr();

  if (sums.empty()) {
    if (atoms.empty()) return constant(coeff);
    std::sort(atoms.begin(), atoms.end(), ExprLess{});
    if (coeff == 1 && atoms.size() == 1) return atoms.front();
    std::vector<ExprPtr> kids;
    if (coeff != 1) kids.push_back(constant(coeff));
    kids.insert(kids.end(), atoms.begin(), atoms.end());
    if (kids.size() == 1) return kids.front();
    return raw(Kind::Product, Fn::Sin, 0, {}, std::move(kids));
  }

  // distribute over the sum factors
  std::vector<ExprPtr> parts;
  {
    std::vector<ExprPtr> seed;
    seed.push_back(constant(coeff));
    seed.insert(seed.end(), atoms.begin(), atoms.end());
    parts.push_back(product(std::move(seed)));
  }
  for (const auto& s : sums) {
    std::vector<ExprPtr> next;
    next.reserve(parts.size() * s->children().size());
    for (const auto& t : parts)
      for (const auto& st : s->children()) next.push_back(product({t, st}));
    parts = std::move(next);
  }
  return sum(std::move(parts));
}

ExprPtr power(ExprPtr base, Rational exp) {
  if (exp == 0) return one_expr();
  if (exp == 1) return base;
  if (base->kind() == Kind::Constant) {
    const Rational& c = base->value();
    if (c == 0) {
      if (exp < 0) throw std::domain_error("0 raised to a negative power");
      return zero_expr();
    }
    if (c == 1) return one_expr();
    if (auto v = exact_pow(c, exp)) return constant(*v);
    return raw(Kind::Power, Fn::Sin, std::move(exp), {}, {std::move(base)});
  }
  if (base->kind() == Kind::Power) {
    // (b^e2)^e1 merges when e1 is an integer (always valid) or e2 is
    // fractional (b^e2 is the principal branch, >= 0 on its domain)
    if (is_integer(exp) || !is_integer(base->exponent()))
      return power(base->base(), base->exponent() * exp);
    return raw(Kind::Power, Fn::Sin, std::move(exp), {}, {std::move(base)});
  }
  if (base->kind() == Kind::Product && is_integer(exp)) {
    std::vector<ExprPtr> fs;
    fs.reserve(base->children().size());
    for (const auto& k : base->children()) fs.push_back(power(k, exp));
    return product(std::move(fs));
  }
  if (base->kind() == Kind::Sum && is_integer(exp) && exp > 1 && exp <= kMaxSumExpansion) {
    long n = to_long_exact(exp);
    std::vector<ExprPtr> reps(static_cast<std::size_t>(n), base);
    return product(std::move(reps));
  }
  return raw(Kind::Power, Fn::Sin, std::move(exp), {}, {std::move(base)});
}

ExprPtr func(Fn f, ExprPtr a) {
  if (a->kind() == Kind::Constant) {
    const Rational& c = a->value();
    switch (f) {
      case Fn::Sin:
        if (c == 0) return zero_expr();
        break;
      case Fn::Cos:
        if (c == 0) return one_expr();
        break;
      case Fn::Exp:
        if (c == 0) return one_expr();
        break;
      case Fn::Ln:
        if (c == 1) return zero_expr();
        break;
    }
  }
  return raw(Kind::Call, f, 0, {}, {std::move(a)});
}

ExprPtr sqrt_of(ExprPtr e) { return power(std::move(e), Rational(1, 2)); }
ExprPtr sin_of(ExprPtr e) { return func(Fn::Sin, std::move(e)); }
ExprPtr cos_of(ExprPtr e) { return func(Fn::Cos, std::move(e)); }
ExprPtr exp_of(ExprPtr e) { return func(Fn::Exp, std::move(e)); }
ExprPtr ln_of(ExprPtr e) { return func(Fn::Ln, std::move(e)); }

ExprPtr operator+(const ExprPtr& a, const ExprPtr& b) { return sum({a, b}); }
ExprPtr operator-(const ExprPtr& a, const ExprPtr& b) {
  return sum({a, product({constant(-1), b})});
}
ExprPtr operator-(const ExprPtr& a) { return product({constant(-1), a}); }
ExprPtr operator*(const ExprPtr& a, const ExprPtr& b) { return product({a, b}); }
ExprPtr operator/(const ExprPtr& a, const ExprPtr& b) {
  return product({a, power(b, Rational(-1))});
}
ExprPtr operator*(const Rational& c, const ExprPtr& e) { return product({constant(c), e}); }

// ---- printing ----------------------------------------------------------

namespace {

std::string print_expr(const Expr& e);

// operand of '*' or '/'
std::string print_factor(const Expr& f, const Rational& exp) {
  std::string base;
  bool parens = false;
  switch (f.kind()) {
    case Kind::Variable: base = f.name(); break;
    case Kind::Call: base = print_expr(f); break;
    case Kind::Constant:
      base = rat_str(f.value());
      parens = f.value() < 0 || !is_integer(f.value());
      break;
    default:
      base = print_expr(f);
      parens = true;
      break;
  }
  if (exp == Rational(1, 2)) return "sqrt(" + base + ")";
  if (parens) base = "(" + base + ")";
  if (exp == 1) return base;
  return base + "^" + rat_str(exp);
}

// positive-coefficient term: c * mono with mono constant-free
std::string print_term(const Rational& c, const ExprPtr& mono) {
  std::vector<std::pair<ExprPtr, Rational>> pos, neg;
  if (mono) {
    auto push = [&](const ExprPtr& f) {
      auto [b, e] = decompose_factor(f);
      // a denominator (sum)^k with integer k >= 2 would re-expand on parse,
      // so such factors keep their signed exponent inline
      bool keep_signed = b->kind() == Kind::Sum && is_integer(e) && e <= -2;
      if (e < 0 && !keep_signed)
        neg.emplace_back(b, -e);
      else
        pos.emplace_back(b, e);
    };
    if (mono->kind() == Kind::Product)
      for (const auto& k : mono->children()) push(k);
    else
      push(mono);
  }
  std::string out;
  if (pos.empty() || c != 1) out = rat_str(c);
  for (const auto& [b, e] : pos) {
    if (!out.empty()) out += "*";
    out += print_factor(*b, e);
  }
  for (const auto& [b, e] : neg) out += "/" + print_factor(*b, e);
  return out;
}

std::string print_expr(const Expr& e) {
  switch (e.kind()) {
    case Kind::Constant: return rat_str(e.value());
    case Kind::Variable: return e.name();
    case Kind::Call: return std::string(fn_name(e.fn())) + "(" + print_expr(*e.arg()) + ")";
    case Kind::Power: {
      auto self = raw(Kind::Power, Fn::Sin, e.exponent(), {}, {e.base()});
      TermParts p{Rational(1), self};
      return print_term(p.coeff, p.mono);
    }
    case Kind::Product: {
      TermParts p = decompose_term(raw(Kind::Product, Fn::Sin, 0, {}, e.children()));
      if (p.coeff < 0) return "-" + print_term(-p.coeff, p.mono);
      return print_term(p.coeff, p.mono);
    }
    case Kind::Sum: {
      std::string out;
      bool first = true;
      for (const auto& t : e.children()) {
        TermParts p = decompose_term(t);
        bool negative = p.coeff < 0;
        std::string body = print_term(negative ? -p.coeff : p.coeff, p.mono);
        if (first) {
          out = (negative ? "-" : "") + body;
          first = false;
        } else {
          out += (negative ? " - " : " + ") + body;
        }
      }
      return out;
    }
  }
  return "?";
}

}  // namespace

std::string to_string(const Expr& e) { return print_expr(e); }

std::ostream& operator<<(std::ostream& os, const Expr& e) { return os << to_string(e); }

void collect_variables(const Expr& e, std::set<std::string>& out) {
  if (e.kind() == Kind::Variable) {
    out.insert(e.name());
    return;
  }
  for (const auto& k : e.children()) collect_variables(*k, out);
}

std::set<std::string> variables(const Expr& e) {
  std::set<std::string> out;
  collect_variables(e, out);
  return out;
}

bool contains_variable(const Expr& e, const std::string& name) {
  if (e.kind() == Kind::Variable) return e.name() == name;
  for (const auto& k : e.children())
    if (contains_variable(*k, name)) return true;
  return false;
}

bool is_rational_expr(const Expr& e) {
  switch (e.kind()) {
    case Kind::Call: return false;
    case Kind::Power:
      if (!is_integer(e.exponent())) return false;
      return is_rational_expr(*e.base());
    default:
      for (const auto& k : e.children())
        if (!is_rational_expr(*k)) return false;
      return true;
  }
}

ExprPtr substitute(const ExprPtr& e, const std::map<std::string, ExprPtr>& bindings) {
  switch (e->kind()) {
    case Kind::Constant: return e;
    case Kind::Variable: {
      auto it = bindings.find(e->name());
      return it == bindings.end() ? e : it->second;
    }
    case Kind::Power: return power(substitute(e->base(), bindings), e->exponent());
    case Kind::Call: return func(e->fn(), substitute(e->arg(), bindings));
    case Kind::Sum:
    case Kind::Product: {
      std::vector<ExprPtr> kids;
      kids.reserve(e->children().size());
      for (const auto& k : e->children()) kids.push_back(substitute(k, bindings));
      return e->kind() == Kind::Sum ? sum(std::move(kids)) : product(std::move(kids));
    }
  }
  return e;
}

ExprPtr differentiate(const ExprPtr& e, const std::string& name) {
  switch (e->kind()) {
    case Kind::Constant: return constant(0);
    case Kind::Variable: return constant(e->name() == name ? 1 : 0);
    case Kind::Sum: {
      std::vector<ExprPtr> kids;
      kids.reserve(e->children().size());
      for (const auto& k : e->children()) kids.push_back(differentiate(k, name));
      return sum(std::move(kids));
    }
    case Kind::Product: {
      std::vector<ExprPtr> terms;
      const auto& kids = e->children();
      for (std::size_t i = 0; i < kids.size(); ++i) {
        ExprPtr d = differentiate(kids[i], name);
        if (d->is_zero_literal()) continue;
        std::vector<ExprPtr> fs;
        fs.reserve(kids.size());
        fs.push_back(std::move(d));
        for (std::size_t j = 0; j < kids.size(); ++j)
          if (j != i) fs.push_back(kids[j]);
        terms.push_back(product(std::move(fs)));
      }
      return sum(std::move(terms));
    }
    case Kind::Power: {
      ExprPtr db = differentiate(e->base(), name);
      if (db->is_zero_literal()) return constant(0);
      return product({constant(e->exponent()), power(e->base(), e->exponent() - 1), db});
    }
    case Kind::Call: {
      ExprPtr da = differentiate(e->arg(), name);
      if (da->is_zero_literal()) return constant(0);
      ExprPtr outer;
      switch (e->fn()) {
        case Fn::Sin: outer = cos_of(e->arg()); break;
        case Fn::Cos: outer = product({constant(-1), sin_of(e->arg())}); break;
        case Fn::Exp: outer = e; break;
        case Fn::Ln: outer = power(e->arg(), Rational(-1)); break;
      }
      return product({outer, da});
    }
  }
  return constant(0);
}

}  // namespace dhred
