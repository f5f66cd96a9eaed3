#pragma once

// The intersection lattice L(A).
//
// Flats are keyed by their support, the set of hyperplanes containing them.
// In a simple central arrangement a flat is determined by its support, and
// the intersection of two supports is again a support, so meets are bitset
// ANDs. Joins walk the cover table built alongside the levels.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "hyperarr/arrangement.hpp"
#include "hyperarr/bitset.hpp"

namespace hyperarr {

using FlatId = std::uint32_t;

struct Flat {
  Subspace subspace;
  Bitset support;  // A_X
  std::size_t rank = 0;
  /// Hyperplanes whose intersection is this flat, |basis| = rank.
  std::vector<std::uint32_t> basis;
};

/// The smallest flat containing x: the intersection of all hyperplanes that
/// contain x. x is a flat iff closure(a, x).subspace == x.
Flat closure(const Arrangement& a, const Subspace& x);

struct LatticeOptions {
  std::size_t max_flats = 500000;
  unsigned threads = 1;
};

class IntersectionLattice {
 public:
  std::size_t ambient() const { return ambient_; }
  unsigned field_order() const { return order_; }
  std::size_t hyperplane_count() const { return hyperplanes_; }

  /// r(A), the rank of the top flat T(A).
  std::size_t rank() const { return level_begin_.size() - 2; }
  std::size_t size() const { return flats_.size(); }

  /// Flats of rank k, sorted by support.
  std::span<const Flat> level(std::size_t k) const;
  FlatId level_begin(std::size_t k) const { return static_cast<FlatId>(level_begin_.at(k)); }
  FlatId level_end(std::size_t k) const { return static_cast<FlatId>(level_begin_.at(k + 1)); }
  std::vector<std::size_t> level_sizes() const;

  const Flat& flat(FlatId id) const { return flats_.at(id); }
  std::span<const Flat> flats() const { return flats_; }

  FlatId bottom() const { return 0; }  // V
  FlatId top() const { return static_cast<FlatId>(flats_.size() - 1); }  // T(A)

  std::optional<FlatId> find(const Bitset& support) const;
  /// The flat equal to `x`, if x ∈ L(A).
  std::optional<FlatId> find(const Subspace& x, const Arrangement& a) const;

  /// closure(X ∩ H_h); X itself when h is in X's support.
  FlatId cover(FlatId x, std::size_t h) const { return up_[x * hyperplanes_ + h]; }
  /// X ∩ Y as subspaces (the lattice join X ∨ Y).
  FlatId join(FlatId x, FlatId y) const;
  /// The largest flat below both: support(X) ∩ support(Y).
  FlatId meet(FlatId x, FlatId y) const;

  /// Strict lattice order X < Y, i.e. Y ⊊ X as subspaces.
  bool below(FlatId x, FlatId y) const;

 private:
  friend IntersectionLattice build_lattice(const Arrangement&, const LatticeOptions&);
  friend class LatticeReader;

  void reindex();

  std::size_t ambient_ = 0;
  unsigned order_ = 1;
  std::size_t hyperplanes_ = 0;
  std::vector<Flat> flats_;
  std::vector<std::size_t> level_begin_;  // size rank + 2
  std::vector<FlatId> up_;                // flats × hyperplanes
  std::unordered_map<Bitset, FlatId, BitsetHash> index_;
};

/// Level-by-level closure: rank k+1 flats are the closures of X ∩ H for X of
/// rank k and H not containing X. Throws LimitError past opts.max_flats.
/// The result does not depend on opts.threads.
IntersectionLattice build_lattice(const Arrangement& a, const LatticeOptions& opts = {});

}  // namespace hyperarr
