#pragma once

#include "dhred/expr.hpp"
#include "dhred/matrixops.hpp"
#include "dhred/parse.hpp"
#include "dhred/sampling.hpp"

#include <array>
#include <vector>

namespace dhred {

// Differential geometry of scalar fields on (n+1)-dimensional Minkowski
// space with signature (+, -, ..., -).

struct Gradient {
  VariableSpace space;
  std::vector<ExprPtr> comp;  // d/dx0 .. d/dxn
};

Gradient gradient(const ExprPtr& u, const VariableSpace& space);

/// Minkowski contraction A_0 B_0 - sum_a A_a B_a.
ExprPtr mdot(const Gradient& a, const Gradient& b);
Rational mdot(const std::vector<Rational>& a, const std::vector<Rational>& b);

/// Wave operator u_x0x0 - sum_a u_xaxa.
ExprPtr dalembertian(const ExprPtr& u, const VariableSpace& space);

/// Second-derivative matrix with the first index raised by the metric:
/// H^0_nu = u_x0xnu, H^a_nu = -u_xaxnu. trace(H) == dalembertian(u).
struct MixedHessian {
  VariableSpace space;
  ExprPtr field;
  std::vector<std::vector<ExprPtr>> h;  // (n+1) x (n+1)

  ExprPtr trace() const;
};

MixedHessian mixed_hessian(const ExprPtr& u, const VariableSpace& space);

/// Numeric snapshot of a symbolic matrix at one point (128-bit floats);
/// throws EvalError on domain errors.
QuadMat eval_matrix(const std::vector<std::vector<ExprPtr>>& m,
                    const std::map<std::string, Quad>& point);

/// Batch kernel: minor sums M_0..M_m of a symbolic matrix evaluated at every
/// sample point. Serial reference plus the OpenMP variant used in production.
std::vector<std::vector<Quad>> minor_sums_at_points(const std::vector<std::vector<ExprPtr>>& m,
                                                    const SampleSet& samples);
std::vector<std::vector<Quad>> minor_sums_at_points_serial(
    const std::vector<std::vector<ExprPtr>>& m, const SampleSet& samples);

}  // namespace dhred
