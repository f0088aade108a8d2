#pragma once

#include "dhred/frame.hpp"
#include "dhred/reduction.hpp"

#include <functional>
#include <string>
#include <vector>

namespace dhred {

/// One worked reduction: an ansatz builder over a frame, the expected surface
/// forms, the expected reduced equation and classification.
struct CatalogEntry {
  int index = 0;
  std::string name;
  std::function<AnsatzPair(const Frame&)> build;
  std::array<ExprPtr, 5> expected_forms;  // rhat, qhat, shat, Rhat, Shat in (y,z)
  Classification::Tag expected_class = Classification::Tag::Mixed;
  std::vector<ExprPtr> surface_exclusions;  // expressions in (y,z) kept away from 0
};

/// The four built-in reductions. `shift` configures the univariate shift
/// function of entry 3 (expression in u, default u^2); the expected reduced
/// equation is independent of that choice because the shifted direction is
/// null.
std::vector<CatalogEntry> catalog(const ExprPtr& shift = nullptr);

/// Exclusion predicates composed with the entry's ansatz (spacetime side).
std::vector<ExprPtr> composed_exclusions(const CatalogEntry& entry, const AnsatzPair& pair);

struct CatalogEntryResult {
  std::string name;
  PairDiagnostics diagnostics;
  ReductionProfile prof;
  DependenceVerdict dependence[5];
  Classification classification;
  bool class_match = false;
  bool reduced_available = false;
  std::string reduced_text;
  bool pass = false;
  std::string failure;  // first failing check, for the report
};

struct CatalogReport {
  std::string frame_name;
  std::vector<CatalogEntryResult> entries;
  bool pass = false;
};

CatalogReport run_catalog(const Frame& frame, const std::string& frame_name,
                          const SamplePlan& plan, const ExprPtr& shift = nullptr);

}  // namespace dhred
