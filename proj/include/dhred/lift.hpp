#pragma once

#include "dhred/reduction.hpp"

#include <string>

namespace dhred {

/// Verifies that composing a reduced-equation solution phi(y,z) with an
/// ansatz solves the original wave equation: u = phi(y(x), z(x)) should make
/// box u - F(u) vanish.
struct LiftCase {
  AnsatzPair pair;
  std::array<ExprPtr, 5> reduced_coeff;     // phi_yy, phi_yz, phi_zz, phi_y, phi_z
  ExprPtr phi;                              // in (y, z)
  ExprPtr F;                                // in u
  SamplePlan plan;                          // spacetime sampling (with exclusions)
  std::vector<ExprPtr> surface_exclusions;  // in (y, z), for the reduced check
};

struct LiftReport {
  bool precondition_ok = false;  // phi satisfies the reduced equation
  ZeroVerdict reduced_check;
  bool exact = false;  // residual evaluated in exact rational arithmetic
  std::string max_residual;   // exact "p/q" or decimal string
  std::string mean_residual;
  double max_residual_value = 0;
  std::size_t samples = 0;
  bool pass = false;
  std::string note;
};

LiftReport lift_and_check(const LiftCase& c);

}  // namespace dhred
