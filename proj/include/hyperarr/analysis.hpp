#pragma once

// Modular flats, supersolvability certificates, the Möbius function and the
// Poincaré polynomial.
//
// A flat X is modular iff X + Y ∈ L(A) for every flat Y. The closure of
// X + Y is the meet X ∧ Y (its support is support(X) ∩ support(Y)), and
// X + Y ⊆ X ∧ Y always, so X + Y ∈ L(A) iff
//
//   dim(X + Y) = dim(X ∧ Y)  <=>  r(X) + r(Y) = r(X ∨ Y) + r(X ∧ Y).
//
// The default scan uses that rank identity over the lattice tables and
// only forms the subspace X + Y for the failing Y, to produce a witness.
// ModularityMethod::SubspaceSum forms every sum and tests it by closure.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hyperarr/lattice.hpp"

namespace hyperarr {

enum class ModularityMethod { RankIdentity, SubspaceSum };

struct ModularityVerdict {
  FlatId flat = 0;
  bool modular = false;
  /// First Y in lattice order with X + Y ∉ L(A); set iff !modular.
  std::optional<FlatId> witness;
  /// X + Y for that witness.
  std::optional<Subspace> sum;
};

struct AnalysisOptions {
  LatticeOptions lattice;
  ModularityMethod method = ModularityMethod::RankIdentity;
};

/// Throws DomainError if x is not a flat of `lat`.
ModularityVerdict is_modular(const Arrangement& a, const IntersectionLattice& lat, FlatId x,
                             ModularityMethod method = ModularityMethod::RankIdentity);

/// Verdicts for every flat of rank r, in lattice order. Throws DomainError if
/// r > r(A).
std::vector<ModularityVerdict> modular_flats_of_rank(
    const Arrangement& a, const IntersectionLattice& lat, std::size_t r,
    ModularityMethod method = ModularityMethod::RankIdentity, unsigned threads = 1);

struct SupersolvabilityCertificate {
  enum class Refutation { None, EmptyRank, NoChain };

  bool supersolvable = false;
  /// The input was not essential and was replaced by essentialize(input).
  bool essentialized = false;
  /// The arrangement all flat ids refer to.
  Arrangement arrangement{0, 1};
  std::shared_ptr<const IntersectionLattice> lattice;

  /// V = X_0 < X_1 < ... < X_r(A) = T(A), each modular.
  std::vector<FlatId> chain;

  /// Modular flats per rank; empty when the rank <= 2 shortcut was taken.
  std::vector<std::vector<FlatId>> modular_by_rank;

  Refutation refutation = Refutation::None;
  /// EmptyRank: the smallest rank without modular flats, with one
  /// non-modularity witness per flat of that rank.
  std::size_t refuted_rank = 0;
  std::vector<ModularityVerdict> witnesses;
};

/// Decides supersolvability. Arrangements of rank <= 2 short-circuit to the
/// chain V < H_0 < T(A). Otherwise every modular flat is found and chains
/// are searched depth-first in lattice order.
SupersolvabilityCertificate is_supersolvable(const Arrangement& a, const AnalysisOptions& opts = {});

/// Same, for an essential arrangement whose lattice is already built.
SupersolvabilityCertificate is_supersolvable(const Arrangement& a,
                                             std::shared_ptr<const IntersectionLattice> lat,
                                             const AnalysisOptions& opts = {});

/// Re-validates every claim of a certificate: chain ranks, inclusions,
/// modularity of each chain member (by subspace sums), and each refutation
/// witness by closure. Returns an empty string on success, else the first
/// failure.
std::string recheck_certificate(const SupersolvabilityCertificate& cert);

/// μ(V) = 1, μ(X) = -Σ_{Y < X} μ(Y); indexed by FlatId.
std::vector<std::int64_t> mobius(const IntersectionLattice& lat);

/// π(A,t) = Σ_X μ(X)(-t)^{r(X)}, constant term first.
std::vector<std::int64_t> poincare(const IntersectionLattice& lat);

/// Factors p = Π (1 + b_i t) over Z with b_i > 0, trying b in increasing
/// order and peeling off multiplicities. nullopt if no such factorization.
std::optional<std::vector<std::int64_t>> factor_poincare(const std::vector<std::int64_t>& p);

/// Exponents of a supersolvable arrangement. Throws RefusalError if it is
/// not supersolvable and InternalError if π fails to factor.
std::vector<std::int64_t> exponents_if_supersolvable(const Arrangement& a,
                                                     const AnalysisOptions& opts = {});

struct Rank2CriterionReport {
  bool supersolvable = false;
  bool has_modular_rank2 = false;
  bool agree() const { return supersolvable == has_modular_rank2; }
  SupersolvabilityCertificate certificate;
  std::vector<ModularityVerdict> rank2;
};

/// Computes supersolvability and the existence of a modular rank-2 flat
/// independently. Refuses (RefusalError) reducible arrangements and
/// arrangements of rank < 2.
Rank2CriterionReport check_rank2_criterion(const Arrangement& a, const AnalysisOptions& opts = {});

struct WitnessReplay {
  Subspace x, y, sum;
  /// X and Y are intersections of hyperplanes of A.
  bool forms_in_arrangement = false;
  std::optional<LinearForm> expected;
  bool sum_matches_expected = true;
  bool expected_not_in_arrangement = true;
  /// closure(sum) != sum.
  bool sum_outside_lattice = false;
  Flat closure_of_sum;
  bool passed() const {
    return forms_in_arrangement && sum_matches_expected && expected_not_in_arrangement &&
           sum_outside_lattice;
  }
  std::string describe() const;
};

/// Computes X + Y with X = ∩ x_forms and Y = ∩ y_forms, checks it against
/// `expected` (a single hyperplane) when given, and certifies X + Y ∉ L(A)
/// by closure.
WitnessReplay replay_witness(const Arrangement& a, const std::vector<LinearForm>& x_forms,
                             const std::vector<LinearForm>& y_forms,
                             const std::optional<LinearForm>& expected);

/// String forms, parsed in A's ambient space and field. Throws ParseError.
WitnessReplay replay_witness(const Arrangement& a, const std::vector<std::string>& x_forms,
                             const std::vector<std::string>& y_forms,
                             const std::optional<std::string>& expected);

}  // namespace hyperarr
