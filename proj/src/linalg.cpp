#include "hyperarr/linalg.hpp"

#include <sstream>

#include "hyperarr/error.hpp"

namespace hyperarr {

Vector zero_vector(std::size_t n, unsigned order) {
  return Vector(n, CyclotomicNumber(order));
}

CyclotomicNumber dot(std::span<const CyclotomicNumber> a,
                     std::span<const CyclotomicNumber> b) {
  if (a.size() != b.size()) throw DomainError("dot: length mismatch");
  if (a.empty()) return CyclotomicNumber();
  CyclotomicNumber acc(a.front().order());
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j].is_zero() || b[j].is_zero()) continue;
    acc += a[j] * b[j];
  }
  return acc;
}

RrefResult rref(Matrix m) {
  RrefResult out;
  if (m.empty()) return out;
  const std::size_t cols = m.front().size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t pick = row;
    while (pick < m.size() && m[pick][col].is_zero()) ++pick;
    if (pick == m.size()) continue;
    std::swap(m[row], m[pick]);
    if (!m[row][col].is_one()) {
      const CyclotomicNumber inv = m[row][col].inverse();
      for (std::size_t j = col; j < cols; ++j)
        if (!m[row][j].is_zero()) m[row][j] *= inv;
    }
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      const CyclotomicNumber factor = m[r][col];
      for (std::size_t j = col; j < cols; ++j)
        if (!m[row][j].is_zero()) m[r][j] -= factor * m[row][j];
    }
    out.pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  out.matrix = std::move(m);
  return out;
}

Matrix nullspace_of_rref(const Matrix& rows, std::span<const std::size_t> pivots,
                         std::size_t cols, unsigned order) {
  Matrix out;
  std::size_t next_pivot = 0;
  for (std::size_t f = 0; f < cols; ++f) {
    if (next_pivot < pivots.size() && pivots[next_pivot] == f) {
      ++next_pivot;
      continue;
    }
    Vector v = zero_vector(cols, order);
    v[f] = CyclotomicNumber(order, 1L);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rows[i][f];
    out.push_back(std::move(v));
  }
  return out;
}

LinearForm::LinearForm(Vector coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw DomainError("linear form on a zero-dimensional space");
  const unsigned order = coeffs_.front().order();
  std::size_t lead = coeffs_.size();
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (coeffs_[j].order() != order) throw DomainError("linear form: mixed field orders");
    if (lead == coeffs_.size() && !coeffs_[j].is_zero()) lead = j;
  }
  if (lead == coeffs_.size()) throw DomainError("invalid hyperplane: zero linear form");
  lead_ = lead;
  if (!coeffs_[lead].is_one()) {
    const CyclotomicNumber inv = coeffs_[lead].inverse();
    for (std::size_t j = lead; j < coeffs_.size(); ++j)
      if (!coeffs_[j].is_zero()) coeffs_[j] *= inv;
  }
}

LinearForm LinearForm::embed(unsigned N) const {
  Vector v;
  v.reserve(coeffs_.size());
  for (const auto& c : coeffs_) v.push_back(c.embed(N));
  return LinearForm(std::move(v));
}

std::vector<std::string> coordinate_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t j = 0; j < n; ++j)
    names.push_back(n <= 4 ? std::string(1, static_cast<char>('a' + j))
                           : "x" + std::to_string(j + 1));
  return names;
}

std::string LinearForm::to_string(std::span<const std::string> names,
                                  const std::string& generator) const {
  std::vector<std::string> fallback;
  if (names.size() < coeffs_.size()) {
    fallback = coordinate_names(coeffs_.size());
    names = fallback;
  }
  std::ostringstream out;
  bool first = true;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    const auto& c = coeffs_[j];
    if (c.is_zero()) continue;
    if (c.is_rational()) {
      const Rational& q = c.coeffs()[0];
      if (first) {
        if (sgn(q) < 0) out << '-';
      } else {
        out << (sgn(q) < 0 ? " - " : " + ");
      }
      const Rational mag = abs(q);
      if (mag != 1) out << mag.get_str() << '*';
    } else {
      if (!first) out << " + ";
      out << '(' << c.to_string(generator) << ")*";
    }
    out << names[j];
    first = false;
  }
  return out.str();
}

std::size_t LinearForm::hash() const {
  std::size_t seed = coeffs_.size();
  for (const auto& c : coeffs_)
    seed ^= c.hash() + 0x9e3779b97f4a7c15ULL + (seed << 6U) + (seed >> 2U);
  return seed;
}

Subspace Subspace::whole(std::size_t ambient, unsigned order) {
  return Subspace(ambient, order, RrefResult{});
}

Subspace Subspace::origin(std::size_t ambient, unsigned order) {
  Matrix id;
  for (std::size_t j = 0; j < ambient; ++j) {
    Vector row = zero_vector(ambient, order);
    row[j] = CyclotomicNumber(order, 1L);
    id.push_back(std::move(row));
  }
  return from_rows(ambient, order, std::move(id));
}

Subspace Subspace::from_forms(std::size_t ambient, unsigned order,
                              std::span<const LinearForm> forms) {
  Matrix rows;
  rows.reserve(forms.size());
  for (const auto& f : forms) {
    if (f.ambient() != ambient || f.order() != order)
      throw DomainError("subspace_from_forms: form does not match ambient/field");
    rows.push_back(f.coeffs());
  }
  return from_rows(ambient, order, std::move(rows));
}

Subspace Subspace::from_rows(std::size_t ambient, unsigned order, Matrix rows) {
  for (const auto& r : rows)
    if (r.size() != ambient) throw DomainError("subspace: row length mismatch");
  return Subspace(ambient, order, rref(std::move(rows)));
}

Subspace Subspace::span_of(std::size_t ambient, unsigned order,
                           std::span<const Vector> vectors) {
  Matrix rows(vectors.begin(), vectors.end());
  for (const auto& r : rows)
    if (r.size() != ambient) throw DomainError("span: vector length mismatch");
  RrefResult r = rref(std::move(rows));
  return from_rows(ambient, order, nullspace_of_rref(r.matrix, r.pivots, ambient, order));
}

Matrix Subspace::basis() const {
  return nullspace_of_rref(forms_, pivots_, ambient_, order_);
}

bool Subspace::annihilated_by(std::span<const CyclotomicNumber> form) const {
  if (form.size() != ambient_) throw DomainError("annihilated_by: ambient mismatch");
  // form is in the row space iff form = Σ form[p_i] row_i; the pivot
  // columns agree by construction, so only free columns need checking.
  std::size_t next_pivot = 0;
  for (std::size_t f = 0; f < ambient_; ++f) {
    if (next_pivot < pivots_.size() && pivots_[next_pivot] == f) {
      ++next_pivot;
      continue;
    }
    CyclotomicNumber acc(order_);
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
      const auto& a = form[pivots_[i]];
      const auto& r = forms_[i][f];
      if (!a.is_zero() && !r.is_zero()) acc += a * r;
    }
    if (!(acc == form[f])) return false;
  }
  return true;
}

Subspace Subspace::embed(unsigned N) const {
  Matrix rows = forms_;
  for (auto& r : rows)
    for (auto& c : r) c = c.embed(N);
  return from_rows(ambient_, N, std::move(rows));
}

std::size_t Subspace::hash() const {
  std::size_t seed = ambient_ * 31 + codim();
  for (const auto& r : forms_)
    for (const auto& c : r)
      seed ^= c.hash() + 0x9e3779b97f4a7c15ULL + (seed << 6U) + (seed >> 2U);
  return seed;
}

namespace {
void require_compatible(const Subspace& x, const Subspace& y) {
  if (x.ambient() != y.ambient()) throw DomainError("subspaces: ambient mismatch");
  if (x.order() != y.order()) throw DomainError("subspaces: field order mismatch");
}
}  // namespace

Subspace intersect(const Subspace& x, const Subspace& y) {
  require_compatible(x, y);
  if (y.codim() == 0) return x;
  if (x.codim() == 0) return y;
  Matrix rows = x.forms();
  rows.insert(rows.end(), y.forms().begin(), y.forms().end());
  return Subspace::from_rows(x.ambient(), x.order(), std::move(rows));
}

Subspace intersect(const Subspace& x, const LinearForm& h) {
  if (h.ambient() != x.ambient() || h.order() != x.order())
    throw DomainError("intersect: form does not match subspace");
  Matrix rows = x.forms();
  rows.push_back(h.coeffs());
  return Subspace::from_rows(x.ambient(), x.order(), std::move(rows));
}

Subspace subspace_sum(const Subspace& x, const Subspace& y) {
  require_compatible(x, y);
  if (x.codim() == 0 || y.codim() == 0) return Subspace::whole(x.ambient(), x.order());
  Matrix vectors = x.basis();
  Matrix yb = y.basis();
  vectors.insert(vectors.end(), yb.begin(), yb.end());
  return Subspace::span_of(x.ambient(), x.order(), vectors);
}

bool contains(const Subspace& x, const Subspace& y) {
  require_compatible(x, y);
  for (const auto& f : x.forms())
    if (!y.annihilated_by(f)) return false;
  return true;
}

std::string to_string(const Subspace& x) {
  if (x.codim() == 0) return "V";
  std::string out = "{";
  for (std::size_t i = 0; i < x.forms().size(); ++i) {
    if (i > 0) out += ", ";
    out += LinearForm(x.forms()[i]).to_string();
  }
  return out + "}";
}

}  // namespace hyperarr
