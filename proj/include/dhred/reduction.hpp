#pragma once

#include "dhred/minkowski.hpp"
#include "dhred/parse.hpp"
#include "dhred/sampling.hpp"

#include <array>
#include <optional>
#include <string>

namespace dhred {

/// The two new variables y(x), z(x) of a two-variable reduction.
struct AnsatzPair {
  VariableSpace space;
  ExprPtr y;
  ExprPtr z;
};

struct PairDiagnostics {
  bool y_gradient_zero = false;
  bool z_gradient_zero = false;
  bool independent = false;  // Jacobian [grad y; grad z] reaches rank 2 somewhere
  std::string note;
  bool ok() const { return !y_gradient_zero && !z_gradient_zero && independent; }
};

PairDiagnostics validate_pair(const AnsatzPair& pair, const SamplePlan& plan);

struct SurfaceForm {
  std::string key;      // r, q, s, R, S
  ExprPtr candidate;    // expression in (y, z); null until supplied
  ZeroVerdict verdict;  // of candidate(y(x), z(x)) - computed(x)
  bool verified = false;
};

/// The five reduction conditions r = grad y . grad y, q = grad y . grad z,
/// s = grad z . grad z, R = box y, S = box z, as expressions in x, plus the
/// verification state of user-supplied surface forms in (y, z).
struct ReductionProfile {
  AnsatzPair pair;
  ExprPtr r, q, s, R, S;
  std::array<SurfaceForm, 5> forms;

  std::array<const ExprPtr*, 5> computed() const { return {&r, &q, &s, &R, &S}; }
  bool all_verified() const;
};

ReductionProfile profile(const AnsatzPair& pair);

/// Verifies candidate surface forms rhat..Shat (expressions in the surface
/// variables) against the computed profile by sampling
/// e(x) - ehat(y(x), z(x)).
ReductionProfile verify_surface_forms(ReductionProfile p,
                                      const std::array<ExprPtr, 5>& candidates,
                                      const SamplePlan& plan);

/// Necessary condition that e(x) is a function of (y, z) alone: the 3x(n+1)
/// Jacobian [grad e; grad y; grad z] must have numerical rank <= 2 at every
/// accepted sample, i.e. every 3x3 minor stays below tolerance.
struct DependenceVerdict {
  bool pass = false;
  std::vector<ZeroVerdict> minors;  // one per column triple
  std::string witness;              // first failing minor description
};

DependenceVerdict dependence_test(const ExprPtr& e, const AnsatzPair& pair,
                                  const SamplePlan& plan);

struct Classification {
  enum class Tag { Elliptic, Hyperbolic, Parabolic, FirstOrder, Mixed };
  Tag tag = Tag::Mixed;
  std::size_t positive = 0, negative = 0, zero = 0;
  std::string signs;  // per-sample sign of r*s - q^2: '+', '-', '0'
  double disc_min = 0, disc_max = 0;
  double grad_norm_min = 0;  // min over samples of r^2 + s^2 + q^2
  std::string note;
};

const char* classification_name(Classification::Tag t);

Classification classify(const ReductionProfile& p, const SamplePlan& plan);

/// Reduced 2D equation coefficients (rhat, 2 qhat, shat, Rhat, Shat) for
/// phi_yy, phi_yz, phi_zz, phi_y, phi_z; right side F(phi).
struct ReducedPDE {
  std::array<ExprPtr, 5> coeff;
  std::array<std::string, 5> names() const { return {"phi_yy", "phi_yz", "phi_zz", "phi_y", "phi_z"}; }
  std::string text() const;
};

/// Requires a fully verified profile; throws std::logic_error otherwise.
ReducedPDE reduced_equation(const ReductionProfile& p);

}  // namespace dhred
