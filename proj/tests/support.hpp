#pragma once

// Generators and independent oracles shared by the test binaries.
//
// The oracles use only linalg: they never touch build_lattice, closure or
// the cover table, so agreement with them is a real cross-check.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "hyperarr/arrangement.hpp"
#include "hyperarr/bitset.hpp"
#include "hyperarr/cyclo.hpp"
#include "hyperarr/linalg.hpp"

namespace testing {

using namespace hyperarr;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long range(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(range(0, static_cast<long>(v.size()) - 1))];
  }

  Rational rational(long num = 6, long den = 4) {
    Rational q(range(-num, num), range(1, den));
    q.canonicalize();
    return q;
  }

  /// Σ q_k ζ^k with sparse small rational coefficients.
  CyclotomicNumber element(unsigned order, double density = 0.6) {
    std::vector<Rational> c(static_cast<std::size_t>(euler_phi(order)));
    for (auto& q : c)
      if (coin(density)) q = rational();
    return CyclotomicNumber::from_polynomial(order, c);
  }

  CyclotomicNumber nonzero(unsigned order) {
    for (;;) {
      auto x = element(order);
      if (!x.is_zero()) return x;
    }
  }

  /// Small integer entries, with ζ-multiples when order > 1.
  CyclotomicNumber small_entry(unsigned order) {
    if (coin(0.35)) return CyclotomicNumber(order);
    std::vector<Rational> c(static_cast<std::size_t>(euler_phi(order)));
    c[0] = Rational(range(-2, 2));
    if (c.size() > 1 && coin(0.4)) c[1] = Rational(range(-1, 1));
    return CyclotomicNumber::from_polynomial(order, c);
  }

  Vector vector(std::size_t n, unsigned order) {
    Vector v;
    for (std::size_t j = 0; j < n; ++j) v.push_back(small_entry(order));
    return v;
  }

  Matrix matrix(std::size_t rows, std::size_t cols, unsigned order) {
    Matrix m;
    for (std::size_t r = 0; r < rows; ++r) m.push_back(vector(cols, order));
    return m;
  }

  LinearForm form(std::size_t n, unsigned order) {
    for (;;) {
      Vector v = vector(n, order);
      bool zero = std::all_of(v.begin(), v.end(), [](const auto& c) { return c.is_zero(); });
      if (!zero) return LinearForm(std::move(v));
    }
  }

  Subspace subspace(std::size_t n, unsigned order) {
    const auto rows = static_cast<std::size_t>(range(0, static_cast<long>(n) + 1));
    return Subspace::from_rows(n, order, matrix(rows, n, order));
  }

  Arrangement arrangement(std::size_t ambient, unsigned order, std::size_t max_hyperplanes) {
    const auto m = static_cast<std::size_t>(range(1, static_cast<long>(max_hyperplanes)));
    std::vector<LinearForm> forms;
    for (std::size_t k = 0; k < m; ++k) forms.push_back(form(ambient, order));
    return Arrangement(ambient, order, std::move(forms));
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Every subset of hyperplanes intersected, deduplicated by canonical
/// subspace. Returns (support, rank, subspace) per distinct intersection.
struct OracleFlat {
  Bitset support;
  std::size_t rank = 0;
  Subspace subspace;
};

inline std::vector<OracleFlat> brute_force_flats(const Arrangement& a) {
  const std::size_t m = a.size();
  std::vector<Subspace> seen;
  std::unordered_map<std::size_t, std::vector<std::size_t>> by_hash;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    Matrix rows;
    for (std::size_t h = 0; h < m; ++h)
      if ((mask >> h) & 1U) rows.push_back(a[h].coeffs());
    Subspace x = Subspace::from_rows(a.ambient(), a.field_order(), std::move(rows));
    auto& bucket = by_hash[x.hash()];
    bool dup = false;
    for (std::size_t i : bucket)
      if (seen[i] == x) dup = true;
    if (dup) continue;
    bucket.push_back(seen.size());
    seen.push_back(std::move(x));
  }
  std::vector<OracleFlat> out;
  for (auto& x : seen) {
    OracleFlat f{Bitset(m), x.codim(), x};
    for (std::size_t h = 0; h < m; ++h)
      if (x.lies_in(a[h])) f.support.set(h);
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return x.rank != y.rank ? x.rank < y.rank : x.support < y.support;
  });
  return out;
}

/// π_k = Σ over subsets S of rank k of (-1)^{k+|S|}.
inline std::vector<std::int64_t> whitney_poincare(const Arrangement& a) {
  const std::size_t m = a.size();
  std::vector<std::int64_t> coeffs(a.ambient() + 1, 0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    Matrix rows;
    std::size_t size = 0;
    for (std::size_t h = 0; h < m; ++h)
      if ((mask >> h) & 1U) {
        rows.push_back(a[h].coeffs());
        ++size;
      }
    const std::size_t k = rows.empty() ? 0 : rref(std::move(rows)).rank();
    coeffs[k] += ((k + size) % 2 == 0) ? 1 : -1;
  }
  while (coeffs.size() > 1 && coeffs.back() == 0) coeffs.pop_back();
  return coeffs;
}

/// μ over oracle flats, order by subspace containment only.
inline std::vector<std::int64_t> oracle_mobius(const std::vector<OracleFlat>& flats) {
  std::vector<std::int64_t> mu(flats.size(), 0);
  for (std::size_t x = 0; x < flats.size(); ++x) {
    if (flats[x].rank == 0) {
      mu[x] = 1;
      continue;
    }
    std::int64_t s = 0;
    for (std::size_t y = 0; y < flats.size(); ++y)
      if (y != x && flats[y].rank < flats[x].rank && contains(flats[y].subspace, flats[x].subspace))
        s += mu[y];
    mu[x] = -s;
  }
  return mu;
}

}  // namespace testing
