#include "dhred/sampling.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace dhred {

std::pair<Rational, Rational> SamplePlan::box_for(const std::string& v) const {
  auto it = boxes.find(v);
  if (it != boxes.end()) return it->second;
  return {lo, hi};
}

SamplePlan default_plan() { return SamplePlan{}; }

const char* zero_status_name(ZeroStatus s) {
  switch (s) {
    case ZeroStatus::ProvedZero: return "proved-zero";
    case ZeroStatus::SampledZero: return "sampled-zero";
    case ZeroStatus::Nonzero: return "nonzero";
    case ZeroStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::string point_str(const std::map<std::string, Rational>& point) {
  std::string out;
  for (const auto& [k, v] : point) {
    if (!out.empty()) out += ", ";
    out += k + "=" + rat_str(v);
  }
  return out;
}

SampleSet draw_samples(const SamplePlan& plan, std::vector<std::string> vars,
                       const std::vector<ExprPtr>& must_evaluate) {
  if (plan.count < 1) throw std::invalid_argument("sample count must be >= 1");
  if (plan.tolerance <= 0) throw std::invalid_argument("tolerance must be > 0");
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());

  std::mt19937_64 rng(plan.seed);
  constexpr std::uint64_t kSteps = 64;  // dyadic grid per box

  SampleSet out;
  out.vars = vars;
  const long cap = std::max(1000L, 64L * plan.count);
  long attempts = 0;
  while (static_cast<int>(out.points.size()) < plan.count && attempts < cap) {
    ++attempts;
    std::map<std::string, Rational> pt;
    for (const auto& v : vars) {
      auto [lo, hi] = plan.box_for(v);
      std::uint64_t k = rng() % (kSteps + 1);
      pt.emplace(v, lo + (hi - lo) * Rational(k, kSteps));
    }
    std::map<std::string, Quad> qpt = to_quad_point(pt);
    bool ok = true;
    for (const auto& pred : plan.exclusions) {
      try {
        if (abs(eval_quad(pred, qpt).value) < plan.guard) {
          ok = false;
          break;
        }
      } catch (const EvalError&) {
        ok = false;
        break;
      }
    }
    if (ok) {
      for (const auto& e : must_evaluate) {
        try {
          eval_quad(e, qpt);
        } catch (const EvalError&) {
          ok = false;
          break;
        }
      }
    }
    if (ok) out.points.push_back(std::move(pt));
  }
  if (static_cast<int>(out.points.size()) < plan.count) {
    std::ostringstream oss;
    oss << "inconclusive domain: accepted " << out.points.size() << " of " << plan.count
        << " requested samples after " << attempts << " candidates";
    throw SamplingError(oss.str());
  }
  return out;
}

namespace {

QuadSample eval_quad_one(const ExprPtr& e, const std::map<std::string, Rational>& pt) {
  QuadSample s;
  try {
    QuadValue v = eval_quad(e, to_quad_point(pt));
    s.ok = true;
    s.value = v.value;
    s.scale = v.max_abs_subterm > 1 ? v.max_abs_subterm : Quad(1);
  } catch (const std::exception& ex) {  // nothing may escape the parallel region
    s.ok = false;
    s.error = ex.what();
  }
  return s;
}

RatSample eval_exact_one(const ExprPtr& e, const std::map<std::string, Rational>& pt) {
  RatSample s;
  try {
    auto v = eval_exact(e, pt);
    if (v) {
      s.ok = true;
      s.value = *v;
    } else {
      s.error = "inexact";
    }
  } catch (const std::exception& ex) {
    s.ok = false;
    s.error = ex.what();
  }
  return s;
}

}  // namespace

std::vector<QuadSample> eval_quad_batch_serial(const ExprPtr& e, const SampleSet& s) {
  std::vector<QuadSample> out(s.points.size());
  for (std::size_t i = 0; i < s.points.size(); ++i) out[i] = eval_quad_one(e, s.points[i]);
  return out;
}

std::vector<QuadSample> eval_quad_batch(const ExprPtr& e, const SampleSet& s) {
  std::vector<QuadSample> out(s.points.size());
  const long n = static_cast<long>(s.points.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[i] = eval_quad_one(e, s.points[i]);
  return out;
}

std::vector<RatSample> eval_exact_batch_serial(const ExprPtr& e, const SampleSet& s) {
  std::vector<RatSample> out(s.points.size());
  for (std::size_t i = 0; i < s.points.size(); ++i) out[i] = eval_exact_one(e, s.points[i]);
  return out;
}

std::vector<RatSample> eval_exact_batch(const ExprPtr& e, const SampleSet& s) {
  std::vector<RatSample> out(s.points.size());
  const long n = static_cast<long>(s.points.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[i] = eval_exact_one(e, s.points[i]);
  return out;
}

ZeroVerdict is_zero(const ExprPtr& e, const SamplePlan& plan) {
  ZeroVerdict v;
  v.seed = plan.seed;
  if (e->is_zero_literal()) {
    v.status = ZeroStatus::ProvedZero;
    v.exact = true;
    return v;
  }
  if (e->is_constant()) {
    v.status = ZeroStatus::Nonzero;
    v.exact = true;
    v.witness_value = rat_str(e->value());
    v.witness_point = "(constant)";
    return v;
  }

  std::set<std::string> names = variables(e);
  for (const auto& p : plan.exclusions) collect_variables(*p, names);
  std::vector<std::string> vars(names.begin(), names.end());

  SampleSet set;
  try {
    set = draw_samples(plan, vars, {e});
  } catch (const SamplingError& ex) {
    v.status = ZeroStatus::Inconclusive;
    v.note = ex.what();
    return v;
  }

  if (is_rational_expr(e)) {
    v.exact = true;
    auto rs = eval_exact_batch(e, set);
    std::size_t used = 0;
    for (std::size_t i = 0; i < rs.size(); ++i) {
      if (!rs[i].ok || !rs[i].error.empty()) continue;  // late domain rejection
      ++used;
      if (rs[i].value != 0) {
        v.status = ZeroStatus::Nonzero;
        v.samples = used;
        v.witness_point = point_str(set.points[i]);
        v.witness_value = rat_str(rs[i].value);
        return v;
      }
    }
    if (used == 0) {
      v.status = ZeroStatus::Inconclusive;
      v.note = "exact evaluation failed at every accepted sample";
      return v;
    }
    v.status = ZeroStatus::SampledZero;
    v.samples = used;
    return v;
  }

  auto qs = eval_quad_batch(e, set);
  std::size_t used = 0;
  Quad worst = 0;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    if (!qs[i].ok) continue;
    ++used;
    Quad ratio = abs(qs[i].value) / qs[i].scale;
    if (ratio > worst) worst = ratio;
    if (ratio > plan.tolerance) {
      v.status = ZeroStatus::Nonzero;
      v.samples = used;
      v.witness_point = point_str(set.points[i]);
      v.witness_value = quad_str(qs[i].value);
      v.max_ratio = worst.convert_to<double>();
      return v;
    }
  }
  if (used == 0) {
    v.status = ZeroStatus::Inconclusive;
    v.note = "evaluation failed at every accepted sample";
    return v;
  }
  v.status = ZeroStatus::SampledZero;
  v.samples = used;
  v.max_ratio = worst.convert_to<double>();
  return v;
}

}  // namespace dhred
