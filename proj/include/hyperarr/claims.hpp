#pragma once

// The table of explicit non-modularity equations for the exceptional and
// G(r,r,4) arrangements, plus the verification runner built on it.
//
// Each row states X, Y (as intersections of named hyperplanes) and the
// hyperplane that X + Y is claimed to equal; every such hyperplane lies
// outside A, so X + Y ∉ L(A) and neither X nor Y is modular.

#include <string>
#include <vector>

#include "hyperarr/analysis.hpp"

namespace hyperarr {

struct WitnessClaim {
  std::string id;           // e.g. "F4/2"
  std::string arrangement;  // a name accepted by named_arrangement
  std::vector<std::string> x;
  std::vector<std::string> y;
  std::string expected;
};

const std::vector<WitnessClaim>& witness_claims();

/// Arrangements whose lattices are claimed to have no modular rank-2 flat.
const std::vector<std::string>& rank2_empty_arrangements();

struct VerificationRow {
  std::string id;
  std::string kind;  // "witness", "rank2-empty", "rank2-criterion"
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Scope "all", or an arrangement name / claim id prefix ("D4", "G31",
/// "G(3,3,4)", "F4/2"). Throws ParseError for a scope matching nothing.
std::vector<VerificationRow> run_verification(const std::string& scope,
                                              const AnalysisOptions& opts = {});

}  // namespace hyperarr
