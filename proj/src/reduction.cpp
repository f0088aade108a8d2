#include "dhred/reduction.hpp"

#include <sstream>
#include <stdexcept>

namespace dhred {

namespace {

const std::array<std::string, 5> kFormKeys = {"r", "q", "s", "R", "S"};

ExprPtr det3(const std::array<std::array<ExprPtr, 3>, 3>& m) {
  auto minor2 = [&](int r1, int r2, int c1, int c2) {
    return m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1];
  };
  return m[0][0] * minor2(1, 2, 1, 2) - m[0][1] * minor2(1, 2, 0, 2) +
         m[0][2] * minor2(1, 2, 0, 1);
}

std::map<std::string, ExprPtr> surface_bindings(const AnsatzPair& pair) {
  std::map<std::string, ExprPtr> b;
  if (pair.space.surface.size() != 2)
    throw std::invalid_argument("ansatz space must carry two surface variables");
  b[pair.space.surface[0]] = pair.y;
  b[pair.space.surface[1]] = pair.z;
  return b;
}

}  // namespace

PairDiagnostics validate_pair(const AnsatzPair& pair, const SamplePlan& plan) {
  PairDiagnostics d;
  Gradient gy = gradient(pair.y, pair.space);
  Gradient gz = gradient(pair.z, pair.space);
  auto all_zero = [](const Gradient& g) {
    for (const auto& c : g.comp)
      if (!c->is_zero_literal()) return false;
    return true;
  };
  d.y_gradient_zero = all_zero(gy);
  d.z_gradient_zero = all_zero(gz);
  if (d.y_gradient_zero || d.z_gradient_zero) {
    d.note = "degenerate ansatz: a gradient vanishes identically";
    return d;
  }
  // functional dependence forces every 2x2 Jacobian minor to vanish
  // identically, so rank 2 at any sample proves independence
  const std::size_t m = gy.comp.size();
  for (std::size_t i = 0; i < m && !d.independent; ++i)
    for (std::size_t j = i + 1; j < m && !d.independent; ++j) {
      ExprPtr minor = gy.comp[i] * gz.comp[j] - gy.comp[j] * gz.comp[i];
      ZeroVerdict v = is_zero(minor, plan);
      if (v.status == ZeroStatus::Nonzero) d.independent = true;
    }
  if (!d.independent) d.note = "y and z appear functionally dependent (all Jacobian minors vanish)";
  return d;
}

bool ReductionProfile::all_verified() const {
  for (const auto& f : forms)
    if (!f.verified) return false;
  return true;
}

ReductionProfile profile(const AnsatzPair& pair) {
  ReductionProfile p{pair, nullptr, nullptr, nullptr, nullptr, nullptr, {}};
  Gradient gy = gradient(pair.y, pair.space);
  Gradient gz = gradient(pair.z, pair.space);
  p.r = mdot(gy, gy);
  p.q = mdot(gy, gz);
  p.s = mdot(gz, gz);
  p.R = dalembertian(pair.y, pair.space);
  p.S = dalembertian(pair.z, pair.space);
  for (std::size_t i = 0; i < 5; ++i) p.forms[i].key = kFormKeys[i];
  return p;
}

ReductionProfile verify_surface_forms(ReductionProfile p, const std::array<ExprPtr, 5>& candidates,
                                      const SamplePlan& plan) {
  auto bind = surface_bindings(p.pair);
  auto computed = p.computed();
  for (std::size_t i = 0; i < 5; ++i) {
    p.forms[i].candidate = candidates[i];
    ExprPtr lifted = substitute(candidates[i], bind);
    ExprPtr diff = *computed[i] - lifted;
    p.forms[i].verdict = is_zero(diff, plan);
    p.forms[i].verified = p.forms[i].verdict.passed();
  }
  return p;
}

DependenceVerdict dependence_test(const ExprPtr& e, const AnsatzPair& pair,
                                  const SamplePlan& plan) {
  DependenceVerdict out;
  Gradient ge = gradient(e, pair.space);
  Gradient gy = gradient(pair.y, pair.space);
  Gradient gz = gradient(pair.z, pair.space);
  const std::size_t m = ge.comp.size();

  SamplePlan minor_plan = plan;
  minor_plan.tolerance = Quad("1e-7");  // rank decisions are coarser than zero tests

  out.pass = true;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k) {
        std::array<std::array<ExprPtr, 3>, 3> sub = {
            std::array<ExprPtr, 3>{ge.comp[i], ge.comp[j], ge.comp[k]},
            std::array<ExprPtr, 3>{gy.comp[i], gy.comp[j], gy.comp[k]},
            std::array<ExprPtr, 3>{gz.comp[i], gz.comp[j], gz.comp[k]}};
        ZeroVerdict v = is_zero(det3(sub), minor_plan);
        if (!v.passed() && out.pass) {
          out.pass = false;
          std::ostringstream oss;
          oss << "columns (" << i << "," << j << "," << k << ")";
          if (v.status == ZeroStatus::Nonzero) oss << " at " << v.witness_point;
          out.witness = oss.str();
        }
        out.minors.push_back(std::move(v));
      }
  return out;
}

const char* classification_name(Classification::Tag t) {
  switch (t) {
    case Classification::Tag::Elliptic: return "elliptic";
    case Classification::Tag::Hyperbolic: return "hyperbolic";
    case Classification::Tag::Parabolic: return "parabolic";
    case Classification::Tag::FirstOrder: return "first-order";
    case Classification::Tag::Mixed: return "mixed";
  }
  return "?";
}

Classification classify(const ReductionProfile& p, const SamplePlan& plan) {
  Classification c;

  ExprPtr disc = p.r * p.s - p.q * p.q;
  ExprPtr gnorm = p.r * p.r + p.q * p.q + p.s * p.s;

  std::set<std::string> names = variables(disc);
  collect_variables(*gnorm, names);
  for (const auto& e : plan.exclusions) collect_variables(*e, names);
  std::vector<std::string> vars(names.begin(), names.end());

  SampleSet set;
  try {
    set = draw_samples(plan, vars, {disc, gnorm});
  } catch (const SamplingError& ex) {
    c.note = ex.what();
    return c;
  }

  auto dv = eval_quad_batch(disc, set);
  auto gv = eval_quad_batch(gnorm, set);

  bool first = true;
  bool g_vanishes_somewhere = false;
  for (std::size_t i = 0; i < dv.size(); ++i) {
    if (!dv[i].ok || !gv[i].ok) continue;
    Quad d = dv[i].value;
    bool zero_band = abs(d) <= plan.tolerance * dv[i].scale;
    char sign = zero_band ? '0' : (d > 0 ? '+' : '-');
    c.signs += sign;
    if (sign == '+') ++c.positive;
    if (sign == '-') ++c.negative;
    if (sign == '0') ++c.zero;
    double dd = d.convert_to<double>();
    double gg = gv[i].value.convert_to<double>();
    if (first) {
      c.disc_min = c.disc_max = dd;
      c.grad_norm_min = gg;
      first = false;
    } else {
      c.disc_min = std::min(c.disc_min, dd);
      c.disc_max = std::max(c.disc_max, dd);
      c.grad_norm_min = std::min(c.grad_norm_min, gg);
    }
    if (abs(gv[i].value) <= plan.tolerance * gv[i].scale) g_vanishes_somewhere = true;
  }
  const std::size_t used = c.positive + c.negative + c.zero;
  if (used == 0) {
    c.note = "no usable samples";
    return c;
  }

  if (c.zero == used) {
    ZeroVerdict vr = is_zero(p.r, plan);
    ZeroVerdict vq = is_zero(p.q, plan);
    ZeroVerdict vs = is_zero(p.s, plan);
    if (vr.passed() && vq.passed() && vs.passed()) {
      c.tag = Classification::Tag::FirstOrder;
    } else if (!g_vanishes_somewhere) {
      c.tag = Classification::Tag::Parabolic;
    } else {
      c.tag = Classification::Tag::Mixed;
      c.note = "discriminant vanishes but r^2+q^2+s^2 degenerates at some samples";
    }
  } else if (c.positive == used) {
    c.tag = Classification::Tag::Elliptic;
  } else if (c.negative == used) {
    c.tag = Classification::Tag::Hyperbolic;
  } else {
    c.tag = Classification::Tag::Mixed;
    c.note = "sign of r*s - q^2 varies across samples; reduction type is only "
             "defined within a region of constant sign";
  }
  return c;
}

std::string ReducedPDE::text() const {
  static const std::array<std::string, 5> names = {"phi_yy", "phi_yz", "phi_zz", "phi_y", "phi_z"};
  std::string out;
  for (std::size_t i = 0; i < 5; ++i) {
    const ExprPtr& c = coeff[i];
    if (c->is_zero_literal()) continue;
    bool negative = false;
    std::string body;
    if (c->is_literal(1)) {
      body = names[i];
    } else if (c->is_literal(-1)) {
      negative = true;
      body = names[i];
    } else {
      std::string cs = to_string(c);
      if (!cs.empty() && cs[0] == '-') {
        negative = true;
        cs = cs.substr(1);
      }
      bool atom = c->kind() == Kind::Variable ||
                  (c->kind() == Kind::Constant && is_integer(c->value()) && c->value() > 0);
      body = (atom ? cs : "(" + cs + ")") + "*" + names[i];
    }
    if (out.empty())
      out = (negative ? "-" : "") + body;
    else
      out += (negative ? " - " : " + ") + body;
  }
  if (out.empty()) out = "0";
  return out + " = F(phi)";
}

ReducedPDE reduced_equation(const ReductionProfile& p) {
  if (!p.all_verified())
    throw std::logic_error("reduced_equation requires a fully verified profile");
  ReducedPDE out;
  out.coeff[0] = p.forms[0].candidate;                 // phi_yy
  out.coeff[1] = constant(2) * p.forms[1].candidate;   // phi_yz
  out.coeff[2] = p.forms[2].candidate;                 // phi_zz
  out.coeff[3] = p.forms[3].candidate;                 // phi_y
  out.coeff[4] = p.forms[4].candidate;                 // phi_z
  return out;
}

}  // namespace dhred
