#pragma once

// Central hyperplane arrangements over Q(ζ_n) and the constructions on
// them: product, localization, restriction, deletion, essentialization and
// irreducible decomposition.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hyperarr/linalg.hpp"

namespace hyperarr {

class Arrangement {
 public:
  /// The empty arrangement in an ambient space of dimension `ambient`.
  Arrangement(std::size_t ambient, unsigned field_order);

  /// Normalizes every form, embeds forms from subfields into Q(ζ_field_order)
  /// and drops exact scalar duplicates, keeping first occurrences in order.
  /// Throws DomainError for a zero form or an ambient/field mismatch.
  Arrangement(std::size_t ambient, unsigned field_order, std::vector<LinearForm> forms);

  std::size_t ambient() const { return ambient_; }
  unsigned field_order() const { return order_; }
  std::size_t size() const { return forms_.size(); }
  bool empty() const { return forms_.empty(); }

  const std::vector<LinearForm>& hyperplanes() const { return forms_; }
  const LinearForm& operator[](std::size_t i) const { return forms_.at(i); }

  /// Number of scalar-duplicate forms dropped at construction.
  std::size_t duplicates_removed() const { return duplicates_removed_; }

  /// Index of the hyperplane ker(form), if present.
  std::optional<std::size_t> find(const LinearForm& form) const;
  bool contains_hyperplane(const LinearForm& form) const { return find(form).has_value(); }

  /// H_i as a subspace.
  Subspace hyperplane(std::size_t i) const;
  /// T(A), the intersection of all hyperplanes (V for the empty arrangement).
  Subspace center() const;
  /// r(A) = codim T(A).
  std::size_t rank() const { return center().codim(); }
  bool is_essential() const { return rank() == ambient_; }

  /// Same hyperplanes over Q(ζ_N); requires field_order() | N.
  Arrangement embed(unsigned N) const;

  /// Arrangements are equal iff they list the same forms in the same order.
  friend bool operator==(const Arrangement& a, const Arrangement& b) {
    return a.ambient_ == b.ambient_ && a.order_ == b.order_ && a.forms_ == b.forms_;
  }
  /// Equal as sets of hyperplanes (order ignored).
  bool same_hyperplanes(const Arrangement& other) const;

  /// Canonical text: header line plus one line of rational coordinates per
  /// form. Feeds the cache key.
  std::string canonical_text() const;
  /// 64-bit FNV-1a of canonical_text(), as 16 hex digits.
  std::string content_hash() const;

 private:
  std::size_t ambient_ = 0;
  unsigned order_ = 1;
  std::vector<LinearForm> forms_;
  std::size_t duplicates_removed_ = 0;
};

/// Same as the constructor; named for symmetry with the other builders.
Arrangement make_arrangement(std::size_t ambient, unsigned field_order,
                             std::vector<LinearForm> forms);

/// A_X: hyperplanes containing `x`, in A's order, same ambient space.
/// Throws DomainError if x is not a flat of A.
Arrangement localization(const Arrangement& a, const Subspace& x);

/// A^H: the arrangement induced on H_index in coordinates on H. The pivot
/// coordinate of H's form is eliminated; the other coordinates are kept.
Arrangement restriction(const Arrangement& a, std::size_t index);

/// A \ {H_index}.
Arrangement deletion(const Arrangement& a, std::size_t index);

/// A1 × A2 in V1 ⊕ V2 over Q(ζ_lcm). A1's forms come first.
Arrangement product(const Arrangement& a1, const Arrangement& a2);

/// Essential arrangement of dimension r(A) on V/T(A). Coordinates are the
/// pivot coordinates of the RREF of all defining forms, so an essential
/// input is returned unchanged.
Arrangement essentialize(const Arrangement& a);

/// Hyperplane index blocks of the finest direct-sum decomposition, ordered
/// by smallest member.
std::vector<std::vector<std::size_t>> irreducible_blocks(const Arrangement& a);

/// Irreducible factors, each essentialized in its own block coordinates.
/// Requires an essential input.
std::vector<Arrangement> irreducible_decomposition(const Arrangement& a);

}  // namespace hyperarr
