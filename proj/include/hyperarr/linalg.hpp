#pragma once

// Canonical exact linear algebra over Q(ζ_n).
//
// Subspaces of C^ℓ are stored by their defining linear forms (the
// annihilator) in reduced row echelon form. Pivoting is deterministic, so
// two Subspace values describe the same subspace iff their matrices agree
// entry by entry.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hyperarr/cyclo.hpp"

namespace hyperarr {

using Vector = std::vector<CyclotomicNumber>;
using Matrix = std::vector<Vector>;

/// Zero vector of length `n` over Q(ζ_order).
Vector zero_vector(std::size_t n, unsigned order);

/// Σ a_j b_j (no conjugation: forms act on vectors by the bilinear pairing).
CyclotomicNumber dot(std::span<const CyclotomicNumber> a,
                     std::span<const CyclotomicNumber> b);

struct RrefResult {
  Matrix matrix;                    // nonzero rows only
  std::vector<std::size_t> pivots;  // pivot column of each row, increasing
  std::size_t rank() const { return pivots.size(); }
};

/// Gauss-Jordan elimination, pivoting on the first nonzero entry in each
/// column in row order. Zero rows are dropped.
RrefResult rref(Matrix m);

/// Null space {v : M v = 0} of a matrix in reduced row echelon form with
/// the given pivots and `cols` columns. One basis vector per free column.
Matrix nullspace_of_rref(const Matrix& rref_rows, std::span<const std::size_t> pivots,
                         std::size_t cols, unsigned order);

/// A nonzero linear form, scaled so its first nonzero coefficient is 1.
class LinearForm {
 public:
  /// Throws DomainError if all coefficients are zero or fields differ.
  explicit LinearForm(Vector coeffs);

  std::size_t ambient() const { return coeffs_.size(); }
  unsigned order() const { return coeffs_.front().order(); }
  const Vector& coeffs() const { return coeffs_; }
  const CyclotomicNumber& operator[](std::size_t i) const { return coeffs_[i]; }
  /// Index of the leading (unit) coefficient.
  std::size_t lead() const { return lead_; }

  LinearForm embed(unsigned N) const;

  /// e.g. "a - z*b + (1 + z)*c". Variable names default to a,b,c,d when
  /// ambient <= 4 and x1..xℓ otherwise.
  std::string to_string(std::span<const std::string> names = {},
                        const std::string& generator = "z") const;

  friend bool operator==(const LinearForm&, const LinearForm&) = default;
  std::size_t hash() const;

 private:
  Vector coeffs_;
  std::size_t lead_ = 0;
};

/// Default coordinate names for an ambient space of dimension `n`.
std::vector<std::string> coordinate_names(std::size_t n);

class Subspace {
 public:
  /// The zero-dimensional space over Q.
  Subspace() = default;

  /// The whole space V (no defining forms).
  static Subspace whole(std::size_t ambient, unsigned order);
  /// The origin {0}.
  static Subspace origin(std::size_t ambient, unsigned order);
  /// Common kernel of `forms`; an empty list yields V.
  static Subspace from_forms(std::size_t ambient, unsigned order,
                             std::span<const LinearForm> forms);
  /// Common kernel of the rows of `rows` (which need not be independent).
  static Subspace from_rows(std::size_t ambient, unsigned order, Matrix rows);
  /// Span of `vectors`.
  static Subspace span_of(std::size_t ambient, unsigned order,
                          std::span<const Vector> vectors);

  std::size_t ambient() const { return ambient_; }
  unsigned order() const { return order_; }
  std::size_t codim() const { return pivots_.size(); }
  std::size_t dim() const { return ambient_ - codim(); }

  /// Canonical defining forms (RREF rows).
  const Matrix& forms() const { return forms_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// A basis of the subspace itself (one vector per free column).
  Matrix basis() const;

  /// True iff the form vanishes on this subspace, i.e. lies in the row
  /// space of forms().
  bool annihilated_by(std::span<const CyclotomicNumber> form) const;
  bool lies_in(const LinearForm& h) const { return annihilated_by(h.coeffs()); }

  Subspace embed(unsigned N) const;

  friend bool operator==(const Subspace&, const Subspace&) = default;
  std::size_t hash() const;

 private:
  Subspace(std::size_t ambient, unsigned order, RrefResult r)
      : ambient_(ambient), order_(order), forms_(std::move(r.matrix)),
        pivots_(std::move(r.pivots)) {}

  std::size_t ambient_ = 0;
  unsigned order_ = 1;
  Matrix forms_;
  std::vector<std::size_t> pivots_;
};

/// X ∩ Y.
Subspace intersect(const Subspace& x, const Subspace& y);
/// X ∩ H_form.
Subspace intersect(const Subspace& x, const LinearForm& h);
/// X + Y, via solution bases.
Subspace subspace_sum(const Subspace& x, const Subspace& y);
/// True iff y ⊆ x as point sets (x ≤ y in the lattice order).
bool contains(const Subspace& x, const Subspace& y);

/// "V", or the canonical defining forms as "{a - b, c}".
std::string to_string(const Subspace& x);

}  // namespace hyperarr
