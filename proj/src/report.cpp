#include "dhred/report.hpp"

#include <sstream>

namespace dhred {

namespace {

SamplePlan plan_from(const RunOptions& opt) {
  SamplePlan plan = default_plan();
  plan.seed = opt.seed;
  return plan;
}

int parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ProblemError("invalid integer for " + what + ": '" + s + "'");
  }
}

Rational parse_rational_value(const std::string& s, const std::string& what) {
  try {
    return Rational(s);
  } catch (const std::exception&) {
    throw ProblemError("invalid rational for " + what + ": '" + s + "'");
  }
}

int parse_lambda(const ProblemFile& pf, bool allow_zero) {
  int lambda = parse_int(pf.require("lambda"), "lambda");
  if (lambda == 0 && allow_zero) return lambda;
  if (lambda == 1 || lambda == -1) return lambda;
  throw ProblemError("lambda must be " + std::string(allow_zero ? "0, " : "") + "1 or -1");
}

Frame frame_from(const RunOptions& opt) {
  if (opt.frame == "standard") return standard_frame();
  if (opt.frame == "boosted") return boosted_frame(Rational(5, 4), Rational(3, 4));
  throw ProblemError("unknown frame '" + opt.frame + "' (expected standard or boosted)");
}

Json meta_json(const std::string& command, const std::string& problem, const SamplePlan& plan,
               int n) {
  Json m;
  m["command"] = command;
  m["problem"] = problem;
  m["seed"] = plan.seed;
  m["samples"] = plan.count;
  m["tolerance"] = plan.tolerance.convert_to<double>();
  m["n"] = n;
  return m;
}

ExprPtr parse_shift(const RunOptions& opt) {
  if (opt.entry_shift.empty()) return nullptr;
  return parse_expr(opt.entry_shift, std::vector<std::string>{"u"});
}

struct PairInput {
  AnsatzPair pair;
  std::vector<ExprPtr> extra_exclusions;        // spacetime side
  std::vector<ExprPtr> surface_exclusions;      // (y, z) side
  std::optional<std::array<ExprPtr, 5>> forms;  // candidate surface forms
  std::string source;                           // "file" or entry name
};

/// Builds the ansatz either from explicit y/z keys or from a catalog entry
/// referenced with `entry:` (resolved over the selected frame).
PairInput pair_from_problem(const ProblemFile& pf, const RunOptions& opt, int n) {
  PairInput in;
  if (pf.has("entry")) {
    if (n != 3) throw ProblemError("catalog entries require n = 3");
    std::string want = pf.require("entry");
    for (const auto& e : catalog(parse_shift(opt))) {
      if (want == std::to_string(e.index) || want == e.name) {
        in.pair = e.build(frame_from(opt));
        in.extra_exclusions = composed_exclusions(e, in.pair);
        in.surface_exclusions = e.surface_exclusions;
        in.forms = e.expected_forms;
        in.source = e.name;
        return in;
      }
    }
    throw ProblemError("unknown catalog entry '" + want + "'");
  }
  VariableSpace space = VariableSpace::with_surface(n, {"y", "z"});
  ExprPtr y = parse_expr(pf.require("y"), space.spacetime);
  ExprPtr z = parse_expr(pf.require("z"), space.spacetime);
  in.pair = AnsatzPair{space, y, z};
  in.source = "file";

  static const std::array<const char*, 5> keys = {"rhat", "qhat", "shat", "Rhat", "Shat"};
  bool any = false;
  for (const char* k : keys) any = any || pf.has(k);
  if (any) {
    std::array<ExprPtr, 5> forms;
    for (std::size_t i = 0; i < 5; ++i) {
      auto v = pf.get(keys[i]);
      if (!v) throw ProblemError(std::string("surface forms are all-or-nothing; missing key: ") +
                                 keys[i]);
      forms[i] = parse_expr(*v, space.surface);
    }
    in.forms = forms;
  }
  return in;
}

std::string pass_str(bool b) { return b ? "pass" : "FAIL"; }

}  // namespace

Json to_json(const ZeroVerdict& v) {
  Json j;
  j["status"] = zero_status_name(v.status);
  j["exact"] = v.exact;
  j["samples"] = v.samples;
  if (!v.witness_point.empty()) {
    j["witness_point"] = v.witness_point;
    j["witness_value"] = v.witness_value;
  }
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

Json to_json(const Classification& c) {
  Json j;
  j["tag"] = classification_name(c.tag);
  j["positive"] = c.positive;
  j["negative"] = c.negative;
  j["zero"] = c.zero;
  j["signs"] = c.signs;
  j["discriminant_min"] = c.disc_min;
  j["discriminant_max"] = c.disc_max;
  j["grad_norm_min"] = c.grad_norm_min;
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

Json to_json(const CompatReport& r) {
  Json j;
  j["case"] = r.case_tag;
  j["seed"] = r.seed;
  Json conds = Json::array();
  for (const auto& c : r.conditions) {
    Json cc;
    cc["name"] = c.name;
    cc["verdict"] = to_json(c.verdict);
    cc["pass"] = c.pass;
    conds.push_back(cc);
  }
  j["conditions"] = conds;
  if (!r.nilpotence.empty()) {
    Json nil = Json::array();
    for (const auto& n : r.nilpotence) {
      Json nn;
      nn["label"] = n.label;
      nn["var"] = n.var;
      nn["bound"] = n.bound;
      nn["order"] = n.order;
      nn["exceeded"] = n.exceeded;
      nn["pass"] = n.pass;
      if (!n.note.empty()) nn["note"] = n.note;
      nil.push_back(nn);
    }
    j["nilpotence"] = nil;
  }
  if (!r.residual_table.empty()) {
    Json res = Json::array();
    for (const auto& row : r.residual_table) {
      Json rr;
      rr["k"] = row.k;
      rr["max_residual"] = row.max_residual;
      rr["pass"] = row.pass;
      res.push_back(rr);
    }
    j["residuals"] = res;
  }
  if (!r.power_trace_info.empty()) {
    Json tr = Json::array();
    for (const auto& [k, v] : r.power_trace_info) {
      Json tt;
      tt["k"] = k;
      tt["trace"] = v;
      tr.push_back(tt);
    }
    j["power_traces_info"] = tr;
  }
  if (!r.notes.empty()) j["notes"] = r.notes;
  j["pass"] = r.pass();
  return j;
}

Json to_json(const LiftReport& r) {
  Json j;
  j["precondition_ok"] = r.precondition_ok;
  j["reduced_check"] = to_json(r.reduced_check);
  j["exact"] = r.exact;
  j["max_residual"] = r.max_residual;
  j["mean_residual"] = r.mean_residual;
  j["samples"] = r.samples;
  j["pass"] = r.pass;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

namespace {

void render_verdict_line(std::ostream& os, const std::string& label, const ZeroVerdict& v) {
  os << "  " << label << ": " << zero_status_name(v.status);
  if (v.exact && v.status == ZeroStatus::SampledZero) os << " (exact arithmetic)";
  if (v.samples) os << " [" << v.samples << " samples]";
  if (!v.witness_point.empty()) os << " witness " << v.witness_point << " -> " << v.witness_value;
  if (!v.note.empty()) os << " (" << v.note << ")";
  os << "\n";
}

void render_compat(std::ostream& os, const CompatReport& r) {
  os << "case: " << r.case_tag << "\n";
  for (const auto& c : r.conditions) {
    os << "  [" << pass_str(c.pass) << "] " << c.name;
    if (!c.verdict.witness_point.empty())
      os << "  (witness " << c.verdict.witness_point << " -> " << c.verdict.witness_value << ")";
    os << "\n";
  }
  for (const auto& n : r.nilpotence) {
    os << "  [" << pass_str(n.pass) << "] nilpotence of " << n.label << " in " << n.var << ": ";
    if (n.exceeded)
      os << "order exceeds " << n.bound;
    else
      os << "order " << n.order << " <= " << n.bound;
    if (!n.note.empty()) os << " (" << n.note << ")";
    os << "\n";
  }
  for (const auto& row : r.residual_table) {
    std::ostringstream val;
    val << row.max_residual;
    os << "  [" << pass_str(row.pass) << "] k = " << row.k << ": max residual " << val.str()
       << "\n";
  }
  for (const auto& note : r.notes) os << "  note: " << note << "\n";
  os << "result: " << (r.pass() ? "PASS" : "FAIL") << "\n";
}

}  // namespace

RunResult run_reduce(const ProblemFile& pf, const RunOptions& opt) {
  RunResult out;
  int n = pf.has("n") ? parse_int(pf.require("n"), "n") : 3;
  SamplePlan plan = plan_from(opt);
  PairInput in = pair_from_problem(pf, opt, n);
  for (const auto& e : in.extra_exclusions) plan.exclusions.push_back(e);

  out.json["meta"] = meta_json("reduce", pf.origin, plan, n);
  if (pf.has("entry")) out.json["meta"]["frame"] = opt.frame;

  std::ostringstream os;
  os << "== reduce: " << pf.origin << " ==\n";
  os << "y = " << to_string(in.pair.y) << "\n";
  os << "z = " << to_string(in.pair.z) << "\n";

  PairDiagnostics diag = validate_pair(in.pair, plan);
  Json jd;
  jd["y_gradient_zero"] = diag.y_gradient_zero;
  jd["z_gradient_zero"] = diag.z_gradient_zero;
  jd["independent"] = diag.independent;
  if (!diag.note.empty()) jd["note"] = diag.note;
  out.json["ansatz"] =
      Json{{"y", to_string(in.pair.y)}, {"z", to_string(in.pair.z)}, {"diagnostics", jd}};

  bool ok = diag.ok();
  if (!diag.ok()) os << "ansatz diagnostics: " << diag.note << "\n";

  ReductionProfile prof = profile(in.pair);
  Json jp;
  os << "profile:\n";
  {
    auto computed = prof.computed();
    static const std::array<const char*, 5> keys = {"r", "q", "s", "R", "S"};
    for (std::size_t i = 0; i < 5; ++i) {
      jp[keys[i]] = to_string(*computed[i]);
      os << "  " << keys[i] << " = " << to_string(*computed[i]) << "\n";
    }
  }

  if (in.forms) {
    prof = verify_surface_forms(std::move(prof), *in.forms, plan);
    Json forms = Json::array();
    os << "surface forms:\n";
    for (const auto& f : prof.forms) {
      Json jf;
      jf["key"] = f.key;
      jf["candidate"] = to_string(f.candidate);
      jf["verdict"] = to_json(f.verdict);
      jf["verified"] = f.verified;
      forms.push_back(jf);
      render_verdict_line(os, f.key + "hat = " + to_string(f.candidate), f.verdict);
      ok = ok && f.verified;
    }
    jp["surface_forms"] = forms;
  }
  out.json["profile"] = jp;

  {
    Json dep = Json::array();
    os << "closure over (y, z):\n";
    auto computed = prof.computed();
    for (std::size_t i = 0; i < 5; ++i) {
      DependenceVerdict v = dependence_test(*computed[i], in.pair, plan);
      Json jv;
      jv["key"] = prof.forms[i].key;
      jv["pass"] = v.pass;
      if (!v.witness.empty()) jv["witness"] = v.witness;
      dep.push_back(jv);
      os << "  [" << pass_str(v.pass) << "] " << prof.forms[i].key
         << " depends only on (y, z)";
      if (!v.pass) os << "  (" << v.witness << ")";
      os << "\n";
      ok = ok && v.pass;
    }
    out.json["dependence"] = dep;
  }

  Classification cls = classify(prof, plan);
  out.json["classification"] = to_json(cls);
  os << "classification: " << classification_name(cls.tag) << " (+" << cls.positive << " -"
     << cls.negative << " 0:" << cls.zero << ")\n";
  if (cls.tag == Classification::Tag::Mixed && !cls.note.empty())
    os << "  note: " << cls.note << "\n";

  if (prof.all_verified()) {
    ReducedPDE red = reduced_equation(prof);
    Json jr;
    jr["text"] = red.text();
    Json jc;
    auto names = red.names();
    for (std::size_t i = 0; i < 5; ++i) jc[names[i]] = to_string(red.coeff[i]);
    jr["coefficients"] = jc;
    out.json["reduced_equation"] = jr;
    os << "reduced equation: " << red.text() << "\n";
  } else if (in.forms) {
    os << "reduced equation: unavailable (surface forms not fully verified)\n";
  }

  out.json["result"] = ok ? "pass" : "fail";
  os << "RESULT: " << (ok ? "PASS" : "FAIL") << "\n";
  out.exit_code = ok ? 0 : 1;
  out.text = os.str();
  return out;
}

RunResult run_check_compat(const ProblemFile& pf, const RunOptions& opt) {
  RunResult out;
  SamplePlan plan = plan_from(opt);
  int n = pf.has("n") ? parse_int(pf.require("n"), "n") : 3;

  std::string case_tag = opt.compat_case;
  if (case_tag.empty() && pf.has("case")) case_tag = pf.require("case");
  if (case_tag.empty()) throw ProblemError("missing case (use --case or a 'case:' line)");
  if (pf.has("case") && !opt.compat_case.empty() && pf.require("case") != opt.compat_case)
    throw ProblemError("case mismatch between --case and the problem file");

  CompatReport rep;
  std::vector<CompatReport> extra;
  if (case_tag == "one-variable") {
    std::vector<std::string> uvar = {"u"};
    ExprPtr F = parse_expr(pf.require("F"), uvar);
    ExprPtr Phi = parse_expr(pf.require("Phi"), uvar);
    int lambda = parse_lambda(pf, /*allow_zero=*/true);
    rep = check_one_variable(F, Phi, lambda, n, plan);
    if (pf.has("N")) {
      int N = parse_int(pf.require("N"), "N");
      Rational C = pf.has("C") ? parse_rational_value(pf.require("C"), "C") : Rational(0);
      extra.push_back(check_nonlinearity_form(F, N, C, lambda, plan));
    }
  } else if (case_tag == "elliptic") {
    std::vector<std::string> vars = {"v", "vs"};
    rep = check_elliptic(parse_expr(pf.require("V"), vars), parse_expr(pf.require("h"), vars),
                         parse_expr(pf.require("Phi"), vars), n, plan);
  } else if (case_tag == "hyperbolic") {
    std::vector<std::string> vars = {"v", "w"};
    rep = check_hyperbolic(parse_expr(pf.require("V"), vars), parse_expr(pf.require("W"), vars),
                           parse_expr(pf.require("h"), vars), parse_expr(pf.require("Phi"), vars),
                           parse_expr(pf.require("Psi"), vars), n, plan);
  } else if (case_tag == "parabolic") {
    std::vector<std::string> vars = {"v", "w"};
    rep = check_parabolic(parse_expr(pf.require("V"), vars), parse_expr(pf.require("W"), vars),
                          parse_expr(pf.require("Phi"), vars),
                          parse_lambda(pf, /*allow_zero=*/false), n, plan);
  } else if (case_tag == "first-order") {
    std::vector<std::string> vars = {"v", "w"};
    rep = check_first_order(parse_expr(pf.require("V"), vars), parse_expr(pf.require("W"), vars),
                            plan);
  } else {
    throw ProblemError("unknown case '" + case_tag + "'");
  }

  out.json["meta"] = meta_json("check-compat", pf.origin, plan, n);
  out.json["compat"] = to_json(rep);
  bool ok = rep.pass();
  std::ostringstream os;
  os << "== check-compat: " << pf.origin << " ==\n";
  render_compat(os, rep);
  if (!extra.empty()) {
    Json more = Json::array();
    for (const auto& r : extra) {
      more.push_back(to_json(r));
      render_compat(os, r);
      ok = ok && r.pass();
    }
    out.json["compat_extra"] = more;
  }
  out.exit_code = ok ? 0 : 1;
  out.text = os.str();
  return out;
}

RunResult run_lemmas(const ProblemFile& pf, const RunOptions& opt) {
  RunResult out;
  SamplePlan plan = plan_from(opt);
  int n = pf.has("n") ? parse_int(pf.require("n"), "n") : 3;
  VariableSpace space = VariableSpace::with_surface(n, {"v", "w"});

  ExprPtr v = parse_expr(pf.require("v"), space.spacetime);
  ExprPtr w = parse_expr(pf.require("w"), space.spacetime);
  std::vector<std::string> vw = {"v", "w"};
  ExprPtr h = parse_expr(pf.require("h"), vw);
  ExprPtr Phi = parse_expr(pf.require("Phi"), vw);

  const Quad threshold("1e-8");
  CompatReport detv = check_null_hessian_singular(v, space, plan, threshold);
  CompatReport detw = check_null_hessian_singular(w, space, plan, threshold);
  CompatReport minors = check_minor_sum_identity(v, w, h, Phi, opt.kmax, space, plan, threshold);

  out.json["meta"] = meta_json("lemmas", pf.origin, plan, n);
  out.json["meta"]["kmax"] = opt.kmax;
  out.json["null_hessian_v"] = to_json(detv);
  out.json["null_hessian_w"] = to_json(detw);
  out.json["minor_sums"] = to_json(minors);

  bool ok = detv.pass() && detw.pass() && minors.pass();
  std::ostringstream os;
  os << "== lemmas: " << pf.origin << " ==\n";
  for (const auto& [label, field] : {std::pair<const char*, ExprPtr>{"v", v}, {"w", w}}) {
    MixedHessian H = mixed_hessian(field, space);
    os << "mixed Hessian of " << label << " (row-major):\n";
    for (const auto& row : H.h) {
      os << " ";
      for (const auto& entry : row) os << " [" << to_string(entry) << "]";
      os << "\n";
    }
  }
  os << "-- determinant of the mixed Hessian of v --\n";
  render_compat(os, detv);
  os << "-- determinant of the mixed Hessian of w --\n";
  render_compat(os, detw);
  os << "-- minor-sum identity --\n";
  render_compat(os, minors);
  out.exit_code = ok ? 0 : 1;
  out.text = os.str();
  return out;
}

RunResult run_lift(const ProblemFile& pf, const RunOptions& opt) {
  RunResult out;
  SamplePlan plan = plan_from(opt);
  int n = pf.has("n") ? parse_int(pf.require("n"), "n") : 3;
  PairInput in = pair_from_problem(pf, opt, n);
  for (const auto& e : in.extra_exclusions) plan.exclusions.push_back(e);
  if (!in.forms)
    throw ProblemError("lift requires the surface forms rhat..Shat (or an 'entry:' line)");

  LiftCase lc;
  lc.pair = in.pair;
  lc.plan = plan;
  lc.surface_exclusions = in.surface_exclusions;
  lc.phi = parse_expr(pf.require("phi"), in.pair.space.surface);
  std::vector<std::string> uvar = {"u"};
  lc.F = pf.has("F") ? parse_expr(pf.require("F"), uvar) : constant(0);
  const auto& f = *in.forms;
  lc.reduced_coeff = {f[0], constant(2) * f[1], f[2], f[3], f[4]};

  LiftReport rep = lift_and_check(lc);
  out.json["meta"] = meta_json("lift", pf.origin, plan, n);
  out.json["lift"] = to_json(rep);

  std::ostringstream os;
  os << "== lift: " << pf.origin << " ==\n";
  os << "phi = " << to_string(lc.phi) << ", F = " << to_string(lc.F) << "\n";
  render_verdict_line(os, "phi satisfies the reduced equation", rep.reduced_check);
  if (rep.precondition_ok) {
    os << "  residual: max " << rep.max_residual << ", mean " << rep.mean_residual << " over "
       << rep.samples << " samples" << (rep.exact ? " (exact)" : "") << "\n";
  } else {
    os << "  " << rep.note << "\n";
  }
  os << "result: " << (rep.pass ? "PASS" : "FAIL") << "\n";
  out.exit_code = rep.pass ? 0 : 1;
  out.text = os.str();
  return out;
}

RunResult run_catalog_command(const RunOptions& opt) {
  RunResult out;
  SamplePlan plan = plan_from(opt);
  Frame frame = frame_from(opt);
  CatalogReport rep = run_catalog(frame, opt.frame, plan, parse_shift(opt));

  out.json["meta"] = meta_json("catalog", "(builtin)", plan, 3);
  out.json["meta"]["frame"] = opt.frame;
  Json entries = Json::array();
  std::ostringstream os;
  os << "== catalog run (frame: " << opt.frame << ") ==\n";
  for (const auto& e : rep.entries) {
    Json je;
    je["name"] = e.name;
    je["pass"] = e.pass;
    if (!e.failure.empty()) je["failure"] = e.failure;
    je["classification"] = to_json(e.classification);
    if (e.reduced_available) je["reduced_equation"] = e.reduced_text;
    Json forms = Json::array();
    for (const auto& f : e.prof.forms) {
      if (!f.candidate) continue;
      Json jf;
      jf["key"] = f.key;
      jf["candidate"] = to_string(f.candidate);
      jf["verdict"] = to_json(f.verdict);
      forms.push_back(jf);
    }
    je["surface_forms"] = forms;
    entries.push_back(je);

    os << "[" << pass_str(e.pass) << "] " << e.name;
    if (e.reduced_available) os << ": " << e.reduced_text;
    os << " [" << classification_name(e.classification.tag) << "]";
    if (!e.failure.empty()) os << "  <- " << e.failure;
    os << "\n";
  }
  out.json["catalog"] = Json{{"frame", opt.frame}, {"entries", entries}, {"pass", rep.pass}};
  os << "result: " << (rep.pass ? "PASS" : "FAIL") << "\n";
  out.exit_code = rep.pass ? 0 : 1;
  out.text = os.str();
  return out;
}

}  // namespace dhred
