#pragma once

// Structured reports for the command-line front end.
//
// Every command builds one ordered JSON document. The text output is
// rendered from that same document, so both carry the same facts. Field
// elements appear as arrays of rational strings next to a readable "text"
// rendering; the text output drops the arrays and keeps the readable form.

#include <optional>
#include <string>

#include "json.hpp"

#include "hyperarr/analysis.hpp"
#include "hyperarr/cache.hpp"
#include "hyperarr/claims.hpp"

namespace hyperarr {

using Json = nlohmann::ordered_json;

Json element_json(const CyclotomicNumber& c);
Json form_json(const LinearForm& f);
Json subspace_json(const Subspace& x);
Json flat_json(const IntersectionLattice& lat, FlatId id);
Json verdict_json(const IntersectionLattice& lat, const ModularityVerdict& v);
Json arrangement_json(const Arrangement& a, bool with_forms);
Json certificate_json(const SupersolvabilityCertificate& cert);
Json polynomial_json(const std::vector<std::int64_t>& coeffs);
std::string polynomial_text(const std::vector<std::int64_t>& coeffs);

/// Indented "key: value" rendering of a report; "coeffs" arrays are skipped.
std::string render_text(const Json& report);

struct CommandContext {
  LatticeOptions lattice;
  ModularityMethod method = ModularityMethod::RankIdentity;
  std::optional<LatticeCache> cache;
  bool timing = false;
};

struct CommandResult {
  Json report;
  int exit_code = 0;  // 0 pass, 1 verification failure
};

CommandResult cmd_build(const CommandContext& ctx, const std::string& spec);
CommandResult cmd_lattice(const CommandContext& ctx, const std::string& spec);
CommandResult cmd_modular(const CommandContext& ctx, const std::string& spec,
                          std::optional<std::size_t> rank);
CommandResult cmd_supersolvable(const CommandContext& ctx, const std::string& spec);
/// Both sides of the rank-2 criterion; RefusalError on reducible input.
CommandResult cmd_rank2_criterion(const CommandContext& ctx, const std::string& spec);
CommandResult cmd_poincare(const CommandContext& ctx, const std::string& spec);
CommandResult cmd_decompose(const CommandContext& ctx, const std::string& spec);
CommandResult cmd_verify_paper(const CommandContext& ctx, const std::string& scope);

}  // namespace hyperarr
