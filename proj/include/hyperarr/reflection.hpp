#pragma once

// Reflection arrangements: the monomial family G(r,p,ℓ) and exceptional
// arrangements transcribed from explicit defining polynomials.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hyperarr/arrangement.hpp"

namespace hyperarr {

/// Hyperplanes ker(x_i - ζ_r^m x_j), 1 <= i < j <= ℓ, 0 <= m < r, plus the
/// coordinate hyperplanes ker(x_i) when p != r and r >= 2. Coordinate
/// hyperplanes come first, then (i, j, m) in lexicographic order. Field
/// order r. Throws DomainError unless p | r.
Arrangement monomial_arrangement(unsigned r, unsigned p, std::size_t l);

/// One of D4, F4, H3, G25, G26, G29, G31. Factors keep the order in which
/// the defining polynomial lists them. Throws DomainError otherwise.
Arrangement exceptional_arrangement(std::string_view name);

/// Names accepted by exceptional_arrangement.
std::vector<std::string> exceptional_names();

/// Number of hyperplanes of G(r,p,ℓ).
std::size_t monomial_count(unsigned r, unsigned p, std::size_t l);

struct CatalogEntry {
  std::string name;  // a valid argument for named_arrangement
  std::size_t ambient = 0;
  unsigned field_order = 1;
  std::size_t expected_count = 0;
  /// Classification: supersolvable exactly for G(r,p,ℓ) with p != r, and for
  /// every arrangement of rank <= 2.
  bool supersolvable = false;
  /// The rank of the essentialized arrangement.
  std::size_t rank = 0;
};

/// The named arrangements used by the verification suites.
std::vector<CatalogEntry> catalog();

/// Resolves a single arrangement name:
///   D4 F4 H3 G25 G26 G29 G31        exceptional transcriptions
///   G(r,p,l)                         monomial arrangement
///   A(n) / An                        braid arrangement G(1,1,n+1)
///   B(n) / Bn                        G(2,1,n)
///   D(n) / Dn (n != 4)               G(2,2,n)
///   Boolean(n)                       n coordinate hyperplanes
/// Returns nullopt for unknown names; throws DomainError for invalid
/// parameters.
std::optional<Arrangement> named_arrangement(std::string_view name);

}  // namespace hyperarr
