#include "dhred/catalog.hpp"

#include <sstream>

namespace dhred {

namespace {

VariableSpace catalog_space() { return VariableSpace::with_surface(3, {"y", "z"}); }

ExprPtr sq(const ExprPtr& e) { return power(e, Rational(2)); }

std::array<ExprPtr, 5> parse_forms(const std::array<const char*, 5>& texts) {
  std::vector<std::string> yz = {"y", "z"};
  std::array<ExprPtr, 5> out;
  for (std::size_t i = 0; i < 5; ++i) out[i] = parse_expr(texts[i], yz);
  return out;
}

}  // namespace

std::vector<CatalogEntry> catalog(const ExprPtr& shift) {
  ExprPtr shift_fn = shift ? shift : power(var("u"), Rational(2));
  std::vector<CatalogEntry> out;

  {
    CatalogEntry e;
    e.index = 1;
    e.name = "plane-pair";
    e.build = [](const Frame& f) {
      VariableSpace sp = catalog_space();
      return AnsatzPair{sp, linear_form(f.a(), sp), linear_form(f.d(), sp)};
    };
    e.expected_forms = parse_forms({"1", "0", "-1", "0", "0"});
    e.expected_class = Classification::Tag::Hyperbolic;
    out.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.index = 2;
    e.name = "time-radial";
    e.build = [](const Frame& f) {
      VariableSpace sp = catalog_space();
      ExprPtr rad = sqrt_of(sq(linear_form(f.b(), sp)) + sq(linear_form(f.c(), sp)) +
                            sq(linear_form(f.d(), sp)));
      return AnsatzPair{sp, linear_form(f.a(), sp), rad};
    };
    e.expected_forms = parse_forms({"1", "0", "-1", "0", "-2/z"});
    e.expected_class = Classification::Tag::Hyperbolic;
    e.surface_exclusions = {var("z")};
    out.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.index = 3;
    e.name = "null-shifted-transverse";
    e.build = [shift_fn](const Frame& f) {
      VariableSpace sp = catalog_space();
      ExprPtr null_dir = linear_form(f.a(), sp) + linear_form(f.d(), sp);
      ExprPtr y = linear_form(f.b(), sp) + substitute(shift_fn, {{"u", null_dir}});
      return AnsatzPair{sp, y, linear_form(f.c(), sp)};
    };
    e.expected_forms = parse_forms({"-1", "0", "-1", "0", "0"});
    e.expected_class = Classification::Tag::Elliptic;
    out.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.index = 4;
    e.name = "transverse-radial-null";
    // y is the radius over the two transverse spacelike directions b and c
    // (the only reading consistent with the expected -phi_yy - (1/y)phi_y),
    // z runs along the null direction a + d
    e.build = [](const Frame& f) {
      VariableSpace sp = catalog_space();
      ExprPtr rad = sqrt_of(sq(linear_form(f.b(), sp)) + sq(linear_form(f.c(), sp)));
      return AnsatzPair{sp, rad, linear_form(f.a(), sp) + linear_form(f.d(), sp)};
    };
    e.expected_forms = parse_forms({"-1", "0", "0", "-1/y", "0"});
    e.expected_class = Classification::Tag::Parabolic;
    e.surface_exclusions = {var("y")};
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<ExprPtr> composed_exclusions(const CatalogEntry& entry, const AnsatzPair& pair) {
  std::map<std::string, ExprPtr> bind;
  bind[pair.space.surface[0]] = pair.y;
  bind[pair.space.surface[1]] = pair.z;
  std::vector<ExprPtr> out;
  for (const auto& e : entry.surface_exclusions) out.push_back(substitute(e, bind));
  return out;
}

CatalogReport run_catalog(const Frame& frame, const std::string& frame_name,
                          const SamplePlan& plan, const ExprPtr& shift) {
  CatalogReport rep;
  rep.frame_name = frame_name;
  rep.pass = true;

  auto frame_issues = frame.violations();
  if (!frame_issues.empty()) {
    rep.pass = false;
    CatalogEntryResult r;
    r.name = "frame";
    r.failure = "frame invariants violated: " + frame_issues.front();
    rep.entries.push_back(std::move(r));
    return rep;
  }

  for (const auto& entry : catalog(shift)) {
    CatalogEntryResult r;
    r.name = entry.name;
    AnsatzPair pair = entry.build(frame);

    SamplePlan entry_plan = plan;
    for (auto& ex : composed_exclusions(entry, pair)) entry_plan.exclusions.push_back(ex);

    r.diagnostics = validate_pair(pair, entry_plan);
    if (!r.diagnostics.ok()) {
      r.failure = "ansatz diagnostics: " + r.diagnostics.note;
      rep.pass = false;
      rep.entries.push_back(std::move(r));
      continue;
    }

    r.prof = verify_surface_forms(profile(pair), entry.expected_forms, entry_plan);
    for (std::size_t i = 0; i < 5 && r.failure.empty(); ++i)
      if (!r.prof.forms[i].verified)
        r.failure = "surface form " + r.prof.forms[i].key + " not verified (" +
                    zero_status_name(r.prof.forms[i].verdict.status) +
                    (r.prof.forms[i].verdict.witness_point.empty()
                         ? ""
                         : " at " + r.prof.forms[i].verdict.witness_point) +
                    ")";

    auto computed = r.prof.computed();
    for (std::size_t i = 0; i < 5; ++i) {
      r.dependence[i] = dependence_test(*computed[i], pair, entry_plan);
      if (!r.dependence[i].pass && r.failure.empty())
        r.failure = "profile entry " + r.prof.forms[i].key + " is not a function of (y, z): " +
                    r.dependence[i].witness;
    }

    r.classification = classify(r.prof, entry_plan);
    r.class_match = r.classification.tag == entry.expected_class;
    if (!r.class_match && r.failure.empty())
      r.failure = std::string("classification ") + classification_name(r.classification.tag) +
                  ", expected " + classification_name(entry.expected_class);

    if (r.prof.all_verified()) {
      r.reduced_available = true;
      r.reduced_text = reduced_equation(r.prof).text();
    }

    r.pass = r.failure.empty();
    if (!r.pass) rep.pass = false;
    rep.entries.push_back(std::move(r));
  }
  return rep;
}

}  // namespace dhred
