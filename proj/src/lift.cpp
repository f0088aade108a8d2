#include "dhred/lift.hpp"

namespace dhred {

LiftReport lift_and_check(const LiftCase& c) {
  LiftReport rep;
  const auto& surf = c.pair.space.surface;
  if (surf.size() != 2) {
    rep.note = "ansatz space must carry two surface variables";
    return rep;
  }

  // 1. phi must satisfy the reduced equation
  const std::string& yv = surf[0];
  const std::string& zv = surf[1];
  ExprPtr phi_y = differentiate(c.phi, yv);
  ExprPtr phi_z = differentiate(c.phi, zv);
  ExprPtr residual_red = c.reduced_coeff[0] * differentiate(phi_y, yv) +
                         c.reduced_coeff[1] * differentiate(phi_y, zv) +
                         c.reduced_coeff[2] * differentiate(phi_z, zv) +
                         c.reduced_coeff[3] * phi_y + c.reduced_coeff[4] * phi_z -
                         substitute(c.F, {{"u", c.phi}});
  SamplePlan surf_plan = c.plan;
  surf_plan.exclusions = c.surface_exclusions;
  rep.reduced_check = is_zero(residual_red, surf_plan);
  rep.precondition_ok = rep.reduced_check.passed();
  if (!rep.precondition_ok) {
    rep.note = "phi does not satisfy the reduced equation (precondition failure, not a "
               "lift failure)";
    return rep;
  }

  // 2. lift and measure box u - F(u) at spacetime samples
  ExprPtr u = substitute(c.phi, {{yv, c.pair.y}, {zv, c.pair.z}});
  ExprPtr residual = dalembertian(u, c.pair.space) - substitute(c.F, {{"u", u}});

  if (residual->is_zero_literal()) rep.note = "residual is identically zero";

  std::set<std::string> names = variables(residual);
  for (const auto& e : c.plan.exclusions) collect_variables(*e, names);
  std::vector<std::string> vars(names.begin(), names.end());
  SampleSet set;
  try {
    set = draw_samples(c.plan, vars, {residual});
  } catch (const SamplingError& ex) {
    rep.note = ex.what();
    return rep;
  }
  rep.samples = set.points.size();

  if (is_rational_expr(residual)) {
    rep.exact = true;
    auto rs = eval_exact_batch(residual, set);
    Rational worst = 0, acc = 0;
    std::size_t used = 0;
    for (const auto& s : rs) {
      if (!s.ok) continue;
      ++used;
      Rational a = abs(s.value);
      if (a > worst) worst = a;
      acc += a;
    }
    if (used == 0) {
      rep.note = "no usable samples";
      return rep;
    }
    rep.samples = used;
    rep.max_residual = rat_str(worst);
    rep.mean_residual = rat_str(acc / Rational(static_cast<long>(used)));
    rep.max_residual_value = to_quad(worst).convert_to<double>();
    rep.pass = to_quad(worst) < c.plan.tolerance;
    return rep;
  }

  auto qs = eval_quad_batch(residual, set);
  Quad worst = 0, acc = 0;
  std::size_t used = 0;
  for (const auto& s : qs) {
    if (!s.ok) continue;
    ++used;
    Quad a = abs(s.value);
    if (a > worst) worst = a;
    acc += a;
  }
  if (used == 0) {
    rep.note = "no usable samples";
    return rep;
  }
  rep.samples = used;
  rep.max_residual = quad_str(worst);
  rep.mean_residual = quad_str(acc / Quad(static_cast<unsigned>(used)));
  rep.max_residual_value = worst.convert_to<double>();
  rep.pass = worst < c.plan.tolerance;
  return rep;
}

}  // namespace dhred
