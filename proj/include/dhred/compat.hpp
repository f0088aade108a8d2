#pragma once

#include "dhred/minkowski.hpp"
#include "dhred/parse.hpp"
#include "dhred/sampling.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dhred {

// Necessary compatibility conditions for the overdetermined wave/eikonal
// systems behind each reduction type. Surface variable conventions:
//   one-variable case: u
//   elliptic canonical pair: (v, vs)   [vs formally independent of v]
//   hyperbolic / parabolic / first-order canonical pair: (v, w)

struct ConditionCheck {
  std::string name;
  ZeroVerdict verdict;
  bool expect_zero = true;
  bool pass = false;
};

struct NilpotenceCheck {
  std::string label;  // which function
  std::string var;
  int bound = 0;      // required order <= bound
  int order = -1;     // smallest m with (h d/dvar)^m f == 0; -1 when exceeded
  bool exceeded = false;
  bool pass = false;
  std::string note;
};

struct ResidualRow {
  int k = 0;
  double max_residual = 0;
  bool pass = false;
};

struct CompatReport {
  std::string case_tag;
  std::vector<ConditionCheck> conditions;
  std::vector<NilpotenceCheck> nilpotence;
  std::vector<ResidualRow> residual_table;
  std::vector<std::pair<int, double>> power_trace_info;  // informational tr(H^k)
  std::vector<std::string> notes;
  std::uint64_t seed = 0;
  std::size_t samples = 0;

  bool pass() const;
};

struct NilpotenceResult {
  int order = -1;     // smallest m with (h d/dvar)^m f == 0
  bool exceeded = false;
  int max_order = 0;
  std::string note;   // set when a zero test was inconclusive
};

/// Smallest m <= max_order with (h d/dvar)^m f identically zero.
NilpotenceResult nilpotence_order(const ExprPtr& h, const ExprPtr& f, const std::string& var,
                                  int max_order, const SamplePlan& plan);

/// Single-ansatz compatibility: F*Phi == lambda*dPhi/du and the (n+1)-st
/// u-derivative of Phi vanishes. lambda in {0, +1, -1}.
CompatReport check_one_variable(const ExprPtr& F, const ExprPtr& Phi, int lambda, int n,
                                const SamplePlan& plan);

/// Closed-form admissible nonlinearity: F == lambda / (N*(u+C)) for
/// N in {1,2,3}, and F == 0 for N == 0. Throws std::invalid_argument for N
/// outside 0..3.
CompatReport check_nonlinearity_form(const ExprPtr& F, int N, const Rational& C, int lambda,
                                     const SamplePlan& plan);

/// Generator-based solution family for the hyperbolic canonical system:
/// h = 1/R_vw, Phi = sum f_k(v) R_v^k, Psi = sum g_k(w) R_w^k,
/// V = h Phi_w / Phi, W = h Psi_v / Psi.
struct HyperbolicFamily {
  ExprPtr R;
  ExprPtr h;
  std::vector<ExprPtr> f, g;
  ExprPtr Phi, Psi;
  ExprPtr V, W;
  int n = 3;
};

HyperbolicFamily build_hyperbolic_family(const ExprPtr& R, std::vector<ExprPtr> f,
                                         std::vector<ExprPtr> g, int n, const SamplePlan& plan);

/// Elliptic canonical system over (v, vs):
/// V*Phi == h*dPhi/dvs and (h d/dvs)^(n+1) Phi == 0.
CompatReport check_elliptic(const ExprPtr& V, const ExprPtr& h, const ExprPtr& Phi, int n,
                            const SamplePlan& plan);

/// Hyperbolic canonical system over (v, w):
/// V*Phi == h*dPhi/dw, W*Psi == h*dPsi/dv, and both iterated operators
/// nilpotent of order <= n+1.
CompatReport check_hyperbolic(const ExprPtr& V, const ExprPtr& W, const ExprPtr& h,
                              const ExprPtr& Phi, const ExprPtr& Psi, int n,
                              const SamplePlan& plan);

/// Parabolic canonical system over (v, w): W == 0, V*Phi == lambda*dPhi/dv,
/// d^(n+1)Phi/dv^(n+1) == 0. lambda in {+1, -1}. The report notes that no
/// genuine parabolic reduced equation exists.
CompatReport check_parabolic(const ExprPtr& V, const ExprPtr& W, const ExprPtr& Phi, int lambda,
                             int n, const SamplePlan& plan);

/// Fully null system: compatible only when V == W == 0.
CompatReport check_first_order(const ExprPtr& V, const ExprPtr& W, const SamplePlan& plan);

/// A null-gradient field has a singular mixed Hessian: checks
/// grad v . grad v == 0 first, then |det H(v)| < threshold at every sample.
CompatReport check_null_hessian_singular(const ExprPtr& v, const VariableSpace& space,
                                         const SamplePlan& plan, const Quad& threshold);

/// Minor-sum identity for a canonical null pair: M_k(H(v)) equals
/// (h d/dw)^k Phi / (k! Phi) composed with (v(x), w(x)), for k = 1..kmax.
/// Preconditions: grad v, grad w null and grad v . grad w == h(v, w).
CompatReport check_minor_sum_identity(const ExprPtr& v, const ExprPtr& w, const ExprPtr& h,
                                      const ExprPtr& Phi, int kmax, const VariableSpace& space,
                                      const SamplePlan& plan, const Quad& threshold);

}  // namespace dhred
