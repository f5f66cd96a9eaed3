#include "hyperarr/arrangement.hpp"

#include <cstdint>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "hyperarr/error.hpp"

namespace hyperarr {

namespace {

struct FormHash {
  std::size_t operator()(const LinearForm& f) const { return f.hash(); }
};

}  // namespace

Arrangement::Arrangement(std::size_t ambient, unsigned field_order)
    : ambient_(ambient), order_(field_order) {
  if (field_order == 0) throw DomainError("field order must be positive");
}

Arrangement::Arrangement(std::size_t ambient, unsigned field_order,
                         std::vector<LinearForm> forms)
    : Arrangement(ambient, field_order) {
  std::unordered_set<LinearForm, FormHash> seen;
  for (auto& f : forms) {
    if (f.ambient() != ambient)
      throw DomainError("hyperplane has ambient " + std::to_string(f.ambient()) +
                        ", expected " + std::to_string(ambient));
    if (f.order() != field_order) {
      if (field_order % f.order() != 0)
        throw DomainError("hyperplane over Q(zeta_" + std::to_string(f.order()) +
                          ") does not embed in Q(zeta_" + std::to_string(field_order) + ")");
      f = f.embed(field_order);
    }
    if (!seen.insert(f).second) {
      ++duplicates_removed_;
      continue;
    }
    forms_.push_back(std::move(f));
  }
}

Arrangement make_arrangement(std::size_t ambient, unsigned field_order,
                             std::vector<LinearForm> forms) {
  return Arrangement(ambient, field_order, std::move(forms));
}

std::optional<std::size_t> Arrangement::find(const LinearForm& form) const {
  if (form.ambient() != ambient_) return std::nullopt;
  const LinearForm f = form.order() == order_ ? form : form.embed(order_);
  for (std::size_t i = 0; i < forms_.size(); ++i)
    if (forms_[i] == f) return i;
  return std::nullopt;
}

Subspace Arrangement::hyperplane(std::size_t i) const {
  return Subspace::from_forms(ambient_, order_, std::span(&forms_.at(i), 1));
}

Subspace Arrangement::center() const {
  return Subspace::from_forms(ambient_, order_, forms_);
}

Arrangement Arrangement::embed(unsigned N) const {
  if (N % order_ != 0) throw DomainError("arrangement embed: order does not divide target");
  std::vector<LinearForm> out;
  out.reserve(forms_.size());
  for (const auto& f : forms_) out.push_back(f.embed(N));
  return Arrangement(ambient_, N, std::move(out));
}

bool Arrangement::same_hyperplanes(const Arrangement& other) const {
  if (ambient_ != other.ambient_ || size() != other.size()) return false;
  const unsigned n = lcm_order(order_, other.order_);
  std::unordered_set<LinearForm, FormHash> mine;
  for (const auto& f : forms_) mine.insert(f.embed(n));
  for (const auto& f : other.forms_)
    if (!mine.contains(f.embed(n))) return false;
  return true;
}

std::string Arrangement::canonical_text() const {
  std::ostringstream out;
  out << "ambient " << ambient_ << " field " << order_ << '\n';
  for (const auto& f : forms_) {
    bool first = true;
    for (const auto& c : f.coeffs()) {
      for (const auto& s : c.coeff_strings()) {
        if (!first) out << ' ';
        out << s;
        first = false;
      }
    }
    out << '\n';
  }
  return out.str();
}

std::string Arrangement::content_hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_text()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static constexpr char digits[] = "0123456789abcdef";
  std::string s(16, '0');
  for (int k = 15; k >= 0; --k) {
    s[static_cast<std::size_t>(k)] = digits[h & 0xFU];
    h >>= 4U;
  }
  return s;
}

Arrangement localization(const Arrangement& a, const Subspace& x) {
  std::vector<LinearForm> kept;
  for (const auto& f : a.hyperplanes())
    if (x.lies_in(f)) kept.push_back(f);
  if (!(Subspace::from_forms(a.ambient(), a.field_order(), kept) == x))
    throw DomainError("localization: subspace is not a flat of the arrangement");
  return Arrangement(a.ambient(), a.field_order(), std::move(kept));
}

Arrangement restriction(const Arrangement& a, std::size_t index) {
  if (index >= a.size())
    throw DomainError("restriction: hyperplane index " + std::to_string(index) +
                      " out of range");
  const LinearForm& h = a[index];
  const std::size_t p = h.lead();
  const std::size_t l = a.ambient();
  // Coordinates on H: y_j = x_j for j != p, with x_p = -Σ h_j y_j.
  std::vector<LinearForm> out;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (k == index) continue;
    const LinearForm& g = a[k];
    Vector coeffs;
    coeffs.reserve(l - 1);
    bool nonzero = false;
    for (std::size_t j = 0; j < l; ++j) {
      if (j == p) continue;
      CyclotomicNumber c = g[j];
      if (!g[p].is_zero() && !h[j].is_zero()) c -= g[p] * h[j];
      nonzero = nonzero || !c.is_zero();
      coeffs.push_back(std::move(c));
    }
    if (!nonzero) throw InternalError("restriction: duplicate hyperplane in arrangement");
    out.emplace_back(std::move(coeffs));
  }
  return Arrangement(l - 1, a.field_order(), std::move(out));
}

Arrangement deletion(const Arrangement& a, std::size_t index) {
  if (index >= a.size())
    throw DomainError("deletion: hyperplane index " + std::to_string(index) +
                      " out of range");
  std::vector<LinearForm> kept;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (k != index) kept.push_back(a[k]);
  return Arrangement(a.ambient(), a.field_order(), std::move(kept));
}

Arrangement product(const Arrangement& a1, const Arrangement& a2) {
  const unsigned n = lcm_order(a1.field_order(), a2.field_order());
  const std::size_t l1 = a1.ambient();
  const std::size_t l2 = a2.ambient();
  std::vector<LinearForm> forms;
  forms.reserve(a1.size() + a2.size());
  for (const auto& f : a1.hyperplanes()) {
    Vector v = zero_vector(l1 + l2, n);
    for (std::size_t j = 0; j < l1; ++j) v[j] = f[j].embed(n);
    forms.emplace_back(std::move(v));
  }
  for (const auto& f : a2.hyperplanes()) {
    Vector v = zero_vector(l1 + l2, n);
    for (std::size_t j = 0; j < l2; ++j) v[l1 + j] = f[j].embed(n);
    forms.emplace_back(std::move(v));
  }
  return Arrangement(l1 + l2, n, std::move(forms));
}

Arrangement essentialize(const Arrangement& a) {
  const Subspace t = a.center();
  const auto& pivots = t.pivots();
  std::vector<LinearForm> forms;
  forms.reserve(a.size());
  for (const auto& f : a.hyperplanes()) {
    Vector v;
    v.reserve(pivots.size());
    for (std::size_t p : pivots) v.push_back(f[p]);
    forms.emplace_back(std::move(v));
  }
  return Arrangement(pivots.size(), a.field_order(), std::move(forms));
}

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void merge(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x != y) parent[std::max(x, y)] = std::min(x, y);
  }
};

}  // namespace

std::vector<std::vector<std::size_t>> irreducible_blocks(const Arrangement& a) {
  const std::size_t n = a.size();
  const unsigned order = a.field_order();
  DisjointSets blocks(n);

  // Echelon rows over a greedy basis; each row remembers which combination
  // of basis hyperplanes produced it. A dependent hyperplane merges its
  // block with every basis hyperplane in its unique expansion (its
  // fundamental circuit).
  struct Row {
    Vector values;
    std::size_t pivot;
    Vector combo;  // over basis slots
  };
  std::vector<Row> rows;
  std::vector<std::size_t> basis;  // slot -> hyperplane index

  for (std::size_t h = 0; h < n; ++h) {
    Vector residual = a[h].coeffs();
    Vector combo = zero_vector(basis.size(), order);
    for (const auto& row : rows) {
      const CyclotomicNumber c = residual[row.pivot];
      if (c.is_zero()) continue;
      for (std::size_t j = 0; j < residual.size(); ++j)
        if (!row.values[j].is_zero()) residual[j] -= c * row.values[j];
      for (std::size_t s = 0; s < row.combo.size(); ++s)
        if (!row.combo[s].is_zero()) combo[s] += c * row.combo[s];
    }
    std::size_t pivot = 0;
    while (pivot < residual.size() && residual[pivot].is_zero()) ++pivot;
    if (pivot == residual.size()) {
      for (std::size_t s = 0; s < basis.size(); ++s)
        if (!combo[s].is_zero()) blocks.merge(h, basis[s]);
      continue;
    }
    // residual = a[h] - Σ combo_s B_s; scale so the pivot is 1.
    const CyclotomicNumber inv = residual[pivot].inverse();
    for (auto& c : residual) c *= inv;
    Vector row_combo = zero_vector(basis.size() + 1, order);
    for (std::size_t s = 0; s < basis.size(); ++s) row_combo[s] = -combo[s] * inv;
    row_combo[basis.size()] = inv;
    for (auto& row : rows) row.combo.push_back(CyclotomicNumber(order));
    basis.push_back(h);
    rows.push_back(Row{std::move(residual), pivot, std::move(row_combo)});
  }

  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t h = 0; h < n; ++h) {
    const std::size_t root = blocks.find(h);
    if (slot[root] == n) {
      slot[root] = out.size();
      out.emplace_back();
    }
    out[slot[root]].push_back(h);
  }

  std::size_t rank_sum = 0;
  for (const auto& block : out) {
    std::vector<LinearForm> forms;
    for (std::size_t h : block) forms.push_back(a[h]);
    rank_sum += Subspace::from_forms(a.ambient(), order, forms).codim();
  }
  if (rank_sum != basis.size())
    throw InternalError("irreducible_blocks: blocks are not in direct sum");
  return out;
}

std::vector<Arrangement> irreducible_decomposition(const Arrangement& a) {
  if (!a.is_essential())
    throw DomainError("irreducible_decomposition: arrangement is not essential");
  std::vector<Arrangement> factors;
  for (const auto& block : irreducible_blocks(a)) {
    std::vector<LinearForm> forms;
    for (std::size_t h : block) forms.push_back(a[h]);
    factors.push_back(essentialize(Arrangement(a.ambient(), a.field_order(), std::move(forms))));
  }
  return factors;
}

}  // namespace hyperarr
