#pragma once

#include "dhred/eval.hpp"
#include "dhred/expr.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace dhred {

/// Deterministic sampling configuration for probabilistic zero-testing.
struct SamplePlan {
  std::uint64_t seed = 20240101;
  int count = 64;
  Rational lo{-2};
  Rational hi{2};
  std::map<std::string, std::pair<Rational, Rational>> boxes;  // per-variable override
  std::vector<ExprPtr> exclusions;  // must stay >= guard in absolute value
  Quad guard{"0.1"};
  Quad tolerance{"1e-9"};  // relative, scaled by the max absolute subterm

  std::pair<Rational, Rational> box_for(const std::string& v) const;
};

SamplePlan default_plan();

class SamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SampleSet {
  std::vector<std::string> vars;
  std::vector<std::map<std::string, Rational>> points;
};

/// Draws plan.count accepted points: rationals on a dyadic grid inside the
/// box, rejecting candidates where an exclusion predicate comes within
/// plan.guard of zero or where any of `must_evaluate` hits a domain error.
/// Throws SamplingError when not enough candidates are accepted.
SampleSet draw_samples(const SamplePlan& plan, std::vector<std::string> vars,
                       const std::vector<ExprPtr>& must_evaluate);

// ---- batch evaluation kernels ----------------------------------------------
// One expression over many points: the data-parallel inner loop of every
// sampled check. The plain-loop variants are the reference used by tests and
// the benchmark; the unsuffixed ones run the same per-point computation under
// OpenMP and must agree bit-for-bit.

struct QuadSample {
  bool ok = false;
  Quad value{0};
  Quad scale{1};  // max(1, largest |subterm|)
  std::string error;
};

struct RatSample {
  bool ok = false;
  Rational value{0};
  std::string error;
};

std::vector<QuadSample> eval_quad_batch(const ExprPtr& e, const SampleSet& s);
std::vector<QuadSample> eval_quad_batch_serial(const ExprPtr& e, const SampleSet& s);
std::vector<RatSample> eval_exact_batch(const ExprPtr& e, const SampleSet& s);
std::vector<RatSample> eval_exact_batch_serial(const ExprPtr& e, const SampleSet& s);

// ---- zero-testing ------------------------------------------------------------

enum class ZeroStatus { ProvedZero, SampledZero, Nonzero, Inconclusive };

const char* zero_status_name(ZeroStatus s);

struct ZeroVerdict {
  ZeroStatus status = ZeroStatus::Inconclusive;
  std::size_t samples = 0;
  bool exact = false;  // exact rational sampling was used
  std::string witness_point;
  std::string witness_value;
  std::string note;
  double max_ratio = 0.0;  // max |value|/scale seen (floating path)
  std::uint64_t seed = 0;

  bool passed() const {
    return status == ZeroStatus::ProvedZero || status == ZeroStatus::SampledZero;
  }
};

/// Symbolic-first zero test: ProvedZero when the canonical form is the
/// literal 0; otherwise exact rational sampling for rational expressions and
/// relative-tolerance 128-bit sampling for the rest.
ZeroVerdict is_zero(const ExprPtr& e, const SamplePlan& plan);

std::string point_str(const std::map<std::string, Rational>& point);

}  // namespace dhred
