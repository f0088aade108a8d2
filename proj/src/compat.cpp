#include "dhred/compat.hpp"

#include <sstream>
#include <stdexcept>

namespace dhred {

namespace {

void require_nonzero(const ExprPtr& f, const char* label, const SamplePlan& plan) {
  ZeroVerdict v = is_zero(f, plan);
  if (v.passed()) throw std::invalid_argument(std::string(label) + " is identically zero");
}

void require_lambda(int lambda, bool allow_zero) {
  if (lambda == 0 && allow_zero) return;
  if (lambda == 1 || lambda == -1) return;
  throw std::invalid_argument("lambda must be " + std::string(allow_zero ? "0, " : "") + "+1 or -1");
}

ConditionCheck make_check(std::string name, const ExprPtr& diff, const SamplePlan& plan) {
  ConditionCheck c;
  c.name = std::move(name);
  c.verdict = is_zero(diff, plan);
  c.pass = c.verdict.passed();
  return c;
}

NilpotenceCheck run_nilpotence(std::string label, const ExprPtr& h, const ExprPtr& f,
                               const std::string& var, int bound, const SamplePlan& plan) {
  NilpotenceCheck out;
  out.label = std::move(label);
  out.var = var;
  out.bound = bound;
  NilpotenceResult r = nilpotence_order(h, f, var, bound, plan);
  out.order = r.order;
  out.exceeded = r.exceeded;
  out.note = r.note;
  out.pass = !r.exceeded && r.note.empty() && r.order <= bound;
  return out;
}

}  // namespace

bool CompatReport::pass() const {
  for (const auto& c : conditions)
    if (!c.pass) return false;
  for (const auto& n : nilpotence)
    if (!n.pass) return false;
  for (const auto& r : residual_table)
    if (!r.pass) return false;
  return true;
}

NilpotenceResult nilpotence_order(const ExprPtr& h, const ExprPtr& f, const std::string& var,
                                  int max_order, const SamplePlan& plan) {
  if (max_order < 1) throw std::invalid_argument("max_order must be >= 1");
  NilpotenceResult out;
  out.max_order = max_order;
  ExprPtr cur = f;
  for (int m = 1; m <= max_order; ++m) {
    cur = h * differentiate(cur, var);
    ZeroVerdict v = is_zero(cur, plan);
    if (v.status == ZeroStatus::Inconclusive) {
      out.note = "inconclusive zero test at order " + std::to_string(m) + ": " + v.note;
      out.exceeded = true;
      return out;
    }
    if (v.passed()) {
      out.order = m;
      return out;
    }
  }
  out.exceeded = true;
  return out;
}

CompatReport check_one_variable(const ExprPtr& F, const ExprPtr& Phi, int lambda, int n,
                                const SamplePlan& plan) {
  require_lambda(lambda, /*allow_zero=*/true);
  require_nonzero(Phi, "Phi", plan);
  CompatReport rep;
  rep.case_tag = "one-variable";
  rep.seed = plan.seed;
  ExprPtr diff = F * Phi - constant(lambda) * differentiate(Phi, "u");
  rep.conditions.push_back(make_check("F*Phi - lambda*dPhi/du == 0", diff, plan));
  rep.nilpotence.push_back(
      run_nilpotence("Phi", constant(1), Phi, "u", n + 1, plan));
  if (lambda == 0)
    rep.notes.push_back("lambda = 0 forces F == 0: the quotient condition degenerates");
  return rep;
}

CompatReport check_nonlinearity_form(const ExprPtr& F, int N, const Rational& C, int lambda,
                                     const SamplePlan& plan) {
  if (N < 0 || N > 3) throw std::invalid_argument("N out of range: must be 0, 1, 2 or 3");
  require_lambda(lambda, /*allow_zero=*/true);
  CompatReport rep;
  rep.case_tag = "one-variable";
  rep.seed = plan.seed;
  if (N == 0) {
    rep.conditions.push_back(make_check("F == 0 (N = 0 branch)", F, plan));
  } else {
    ExprPtr form = constant(lambda) / (constant(N) * (var("u") + constant(C)));
    SamplePlan guarded = plan;
    guarded.exclusions.push_back(var("u") + constant(C));
    rep.conditions.push_back(
        make_check("F - lambda/(N*(u+C)) == 0", F - form, guarded));
  }
  return rep;
}

HyperbolicFamily build_hyperbolic_family(const ExprPtr& R, std::vector<ExprPtr> f,
                                         std::vector<ExprPtr> g, int n, const SamplePlan& plan) {
  HyperbolicFamily fam;
  fam.R = R;
  fam.n = n;
  fam.f = std::move(f);
  fam.g = std::move(g);
  if (fam.f.size() > static_cast<std::size_t>(n + 2) ||
      fam.g.size() > static_cast<std::size_t>(n + 2))
    throw std::invalid_argument("coefficient lists may carry at most n+2 entries (k = 0..n+1)");
  ExprPtr Rvw = differentiate(differentiate(R, "v"), "w");
  require_nonzero(Rvw, "R_vw", plan);
  fam.h = constant(1) / Rvw;
  ExprPtr Rv = differentiate(R, "v");
  ExprPtr Rw = differentiate(R, "w");
  std::vector<ExprPtr> phi_terms, psi_terms;
  for (std::size_t k = 0; k < fam.f.size(); ++k)
    phi_terms.push_back(fam.f[k] * power(Rv, Rational(static_cast<long>(k))));
  for (std::size_t k = 0; k < fam.g.size(); ++k)
    psi_terms.push_back(fam.g[k] * power(Rw, Rational(static_cast<long>(k))));
  fam.Phi = sum(std::move(phi_terms));
  fam.Psi = sum(std::move(psi_terms));
  require_nonzero(fam.Phi, "Phi", plan);
  require_nonzero(fam.Psi, "Psi", plan);
  // V and W come from the quotient form, the one consistent with the k = 1
  // minor-sum identity
  fam.V = fam.h * differentiate(fam.Phi, "w") / fam.Phi;
  fam.W = fam.h * differentiate(fam.Psi, "v") / fam.Psi;
  return fam;
}

CompatReport check_elliptic(const ExprPtr& V, const ExprPtr& h, const ExprPtr& Phi, int n,
                            const SamplePlan& plan) {
  require_nonzero(Phi, "Phi", plan);
  CompatReport rep;
  rep.case_tag = "elliptic";
  rep.seed = plan.seed;
  rep.conditions.push_back(
      make_check("V*Phi - h*dPhi/dvs == 0", V * Phi - h * differentiate(Phi, "vs"), plan));
  rep.nilpotence.push_back(run_nilpotence("Phi", h, Phi, "vs", n + 1, plan));
  return rep;
}

CompatReport check_hyperbolic(const ExprPtr& V, const ExprPtr& W, const ExprPtr& h,
                              const ExprPtr& Phi, const ExprPtr& Psi, int n,
                              const SamplePlan& plan) {
  require_nonzero(Phi, "Phi", plan);
  require_nonzero(Psi, "Psi", plan);
  CompatReport rep;
  rep.case_tag = "hyperbolic";
  rep.seed = plan.seed;
  rep.conditions.push_back(
      make_check("V*Phi - h*dPhi/dw == 0", V * Phi - h * differentiate(Phi, "w"), plan));
  rep.conditions.push_back(
      make_check("W*Psi - h*dPsi/dv == 0", W * Psi - h * differentiate(Psi, "v"), plan));
  rep.nilpotence.push_back(run_nilpotence("Phi", h, Phi, "w", n + 1, plan));
  rep.nilpotence.push_back(run_nilpotence("Psi", h, Psi, "v", n + 1, plan));
  return rep;
}

CompatReport check_parabolic(const ExprPtr& V, const ExprPtr& W, const ExprPtr& Phi, int lambda,
                             int n, const SamplePlan& plan) {
  require_lambda(lambda, /*allow_zero=*/false);
  require_nonzero(Phi, "Phi", plan);
  CompatReport rep;
  rep.case_tag = "parabolic";
  rep.seed = plan.seed;
  rep.conditions.push_back(make_check("W == 0", W, plan));
  rep.conditions.push_back(
      make_check("V*Phi - lambda*dPhi/dv == 0", V * Phi - constant(lambda) * differentiate(Phi, "v"),
                 plan));
  rep.nilpotence.push_back(run_nilpotence("Phi", constant(1), Phi, "v", n + 1, plan));
  rep.notes.push_back(
      "no genuine parabolic reduced equation exists: the second variable enters the "
      "reduced first-order equation only as a parameter");
  return rep;
}

CompatReport check_first_order(const ExprPtr& V, const ExprPtr& W, const SamplePlan& plan) {
  CompatReport rep;
  rep.case_tag = "first-order";
  rep.seed = plan.seed;
  rep.conditions.push_back(make_check("V == 0", V, plan));
  rep.conditions.push_back(make_check("W == 0", W, plan));
  rep.notes.push_back(
      "no first-order reduced equation exists: only the algebraic relation F(u) = 0 remains");
  return rep;
}

CompatReport check_null_hessian_singular(const ExprPtr& v, const VariableSpace& space,
                                         const SamplePlan& plan, const Quad& threshold) {
  CompatReport rep;
  rep.case_tag = "null-hessian";
  rep.seed = plan.seed;

  Gradient gv = gradient(v, space);
  rep.conditions.push_back(make_check("grad v . grad v == 0 (precondition)", mdot(gv, gv), plan));
  if (!rep.conditions.back().pass) {
    rep.notes.push_back("precondition failed; determinant not evaluated");
    return rep;
  }

  MixedHessian H = mixed_hessian(v, space);
  std::set<std::string> names;
  std::vector<ExprPtr> entries;
  for (const auto& row : H.h)
    for (const auto& e : row) {
      entries.push_back(e);
      collect_variables(*e, names);
    }
  for (const auto& e : plan.exclusions) collect_variables(*e, names);
  std::vector<std::string> vars(names.begin(), names.end());

  SampleSet set;
  try {
    set = draw_samples(plan, vars, entries);
  } catch (const SamplingError& ex) {
    rep.notes.push_back(ex.what());
    ResidualRow row;
    row.k = static_cast<int>(space.spacetime.size());
    row.pass = false;
    rep.residual_table.push_back(row);
    return rep;
  }
  rep.samples = set.points.size();

  auto minors = minor_sums_at_points(H.h, set);
  Quad worst = 0;
  for (const auto& ms : minors) {
    if (ms.empty()) continue;  // late domain rejection
    Quad d = abs(ms.back());
    if (d > worst) worst = d;
  }
  ResidualRow row;
  row.k = static_cast<int>(space.spacetime.size());
  row.max_residual = worst.convert_to<double>();
  row.pass = worst < threshold;
  rep.residual_table.push_back(row);
  return rep;
}

CompatReport check_minor_sum_identity(const ExprPtr& v, const ExprPtr& w, const ExprPtr& h,
                                      const ExprPtr& Phi, int kmax, const VariableSpace& space,
                                      const SamplePlan& plan, const Quad& threshold) {
  if (kmax < 1) throw std::invalid_argument("kmax must be >= 1");
  require_nonzero(Phi, "Phi", plan);
  CompatReport rep;
  rep.case_tag = "minor-sums";
  rep.seed = plan.seed;

  std::map<std::string, ExprPtr> bind{{"v", v}, {"w", w}};

  Gradient gv = gradient(v, space);
  Gradient gw = gradient(w, space);
  rep.conditions.push_back(make_check("grad v . grad v == 0 (precondition)", mdot(gv, gv), plan));
  rep.conditions.push_back(make_check("grad w . grad w == 0 (precondition)", mdot(gw, gw), plan));
  rep.conditions.push_back(make_check("grad v . grad w - h(v,w) == 0 (precondition)",
                                      mdot(gv, gw) - substitute(h, bind), plan));
  for (const auto& c : rep.conditions)
    if (!c.pass) {
      rep.notes.push_back("precondition failed; identity not evaluated");
      return rep;
    }

  // right sides (h d/dw)^k Phi / (k! Phi) composed with the pair
  std::vector<ExprPtr> rhs;
  ExprPtr cur = Phi;
  Rational kfact = 1;
  for (int k = 1; k <= kmax; ++k) {
    cur = h * differentiate(cur, "w");
    kfact *= k;
    rhs.push_back(substitute(cur / (constant(kfact) * Phi), bind));
  }

  MixedHessian H = mixed_hessian(v, space);
  std::set<std::string> names;
  std::vector<ExprPtr> must;
  for (const auto& row : H.h)
    for (const auto& e : row) {
      must.push_back(e);
      collect_variables(*e, names);
    }
  for (const auto& r : rhs) {
    must.push_back(r);
    collect_variables(*r, names);
  }
  for (const auto& e : plan.exclusions) collect_variables(*e, names);
  std::vector<std::string> vars(names.begin(), names.end());

  SampleSet set;
  try {
    set = draw_samples(plan, vars, must);
  } catch (const SamplingError& ex) {
    rep.notes.push_back(ex.what());
    for (int k = 1; k <= kmax; ++k) rep.residual_table.push_back({k, 0.0, false});
    return rep;
  }
  rep.samples = set.points.size();

  auto minors = minor_sums_at_points(H.h, set);
  const std::size_t m = space.spacetime.size();

  std::vector<Quad> worst(kmax, Quad(0));
  std::vector<std::vector<QuadSample>> rhs_vals;
  rhs_vals.reserve(rhs.size());
  for (const auto& r : rhs) rhs_vals.push_back(eval_quad_batch(r, set));
  for (std::size_t i = 0; i < set.points.size(); ++i) {
    if (minors[i].empty()) continue;  // late domain rejection
    for (int k = 1; k <= kmax; ++k) {
      Quad lhs = static_cast<std::size_t>(k) <= m ? minors[i][k] : Quad(0);
      if (!rhs_vals[k - 1][i].ok) continue;
      Quad res = abs(lhs - rhs_vals[k - 1][i].value);
      if (res > worst[k - 1]) worst[k - 1] = res;
    }
  }
  for (int k = 1; k <= kmax; ++k)
    rep.residual_table.push_back(
        {k, worst[k - 1].convert_to<double>(), worst[k - 1] < threshold});

  // informational: power traces of the Hessian at the first sample
  {
    QuadMat num = eval_matrix(H.h, to_quad_point(set.points.front()));
    auto tr = power_traces(num, kmax);
    for (int k = 1; k <= kmax; ++k)
      rep.power_trace_info.emplace_back(k, tr[k - 1].convert_to<double>());
    rep.notes.push_back("power traces tr(H^k) at the first sample are informational only");
  }
  return rep;
}

}  // namespace dhred
