#include "hyperarr/cyclo.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>

#include "hyperarr/error.hpp"

namespace hyperarr {

namespace detail {

struct FieldData {
  unsigned n = 1;
  unsigned phi = 1;
  std::vector<std::int64_t> modulus;  // Φ_n, constant term first
  // fold[k] = x^{phi+k} mod Φ_n for 0 <= k <= phi-2
  std::vector<std::vector<mpz_class>> fold;
};

namespace {

// Divides `num` by the monic polynomial `den`; the division must be exact.
std::vector<std::int64_t> exact_divide(std::vector<std::int64_t> num,
                                       const std::vector<std::int64_t>& den) {
  const std::size_t dn = den.size() - 1;
  std::vector<std::int64_t> quot(num.size() - dn, 0);
  for (std::size_t k = num.size(); k-- > dn;) {
    const std::int64_t c = num[k];
    quot[k - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[k - dn + j] -= c * den[j];
  }
  for (std::size_t j = 0; j < dn; ++j)
    if (num[j] != 0) throw InternalError("cyclotomic division left a remainder");
  return quot;
}

std::unique_ptr<FieldData> make_field(unsigned n) {
  auto f = std::make_unique<FieldData>();
  f->n = n;
  f->modulus = cyclotomic_polynomial(n);
  f->phi = static_cast<unsigned>(f->modulus.size() - 1);
  const unsigned phi = f->phi;
  if (phi >= 2) {
    // x^phi = -Σ Φ[j] x^j, then multiply by x repeatedly.
    std::vector<mpz_class> cur(phi);
    for (unsigned j = 0; j < phi; ++j) cur[j] = -f->modulus[j];
    f->fold.push_back(cur);
    for (unsigned k = 1; k + 1 < phi; ++k) {
      std::vector<mpz_class> next(phi);
      const mpz_class top = cur[phi - 1];
      for (unsigned j = phi - 1; j > 0; --j) next[j] = cur[j - 1];
      next[0] = 0;
      if (top != 0)
        for (unsigned j = 0; j < phi; ++j) next[j] -= top * f->modulus[j];
      f->fold.push_back(next);
      cur = std::move(next);
    }
  }
  return f;
}

// Reduces an arbitrary-length polynomial modulo Φ_n in place and truncates
// it to φ(n) coordinates.
void reduce_mod(const FieldData& f, std::vector<Rational>& p) {
  const unsigned phi = f.phi;
  for (std::size_t k = p.size(); k-- > phi;) {
    if (sgn(p[k]) == 0) continue;
    const Rational c = p[k];
    for (unsigned j = 0; j < phi; ++j)
      if (f.modulus[j] != 0) p[k - phi + j] -= c * f.modulus[j];
    p[k] = 0;
  }
  p.resize(phi);
}

}  // namespace

const FieldData& field_data(unsigned n) {
  if (n == 0) throw DomainError("cyclotomic field order must be positive");
  static std::mutex mu;
  static std::map<unsigned, std::unique_ptr<FieldData>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = make_field(n);
  return *slot;
}

}  // namespace detail

std::vector<std::int64_t> cyclotomic_polynomial(unsigned n) {
  if (n == 0) throw DomainError("cyclotomic_polynomial: n must be positive");
  std::vector<std::int64_t> p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (unsigned d = 1; d < n; ++d)
    if (n % d == 0) p = detail::exact_divide(std::move(p), cyclotomic_polynomial(d));
  return p;
}

unsigned euler_phi(unsigned n) {
  unsigned result = n;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

unsigned lcm_order(unsigned a, unsigned b) { return std::lcm(a, b); }

CyclotomicNumber::CyclotomicNumber() : CyclotomicNumber(1u) {}

CyclotomicNumber::CyclotomicNumber(unsigned order)
    : field_(&detail::field_data(order)), coeffs_(field_->phi) {}

CyclotomicNumber::CyclotomicNumber(unsigned order, const Rational& value)
    : CyclotomicNumber(order) {
  coeffs_[0] = value;
}

CyclotomicNumber::CyclotomicNumber(unsigned order, long value)
    : CyclotomicNumber(order, Rational(value)) {}

CyclotomicNumber CyclotomicNumber::from_polynomial(
    unsigned order, std::span<const Rational> coeffs) {
  const auto& f = detail::field_data(order);
  std::vector<Rational> p(coeffs.begin(), coeffs.end());
  if (p.size() < f.phi) p.resize(f.phi);
  detail::reduce_mod(f, p);
  return CyclotomicNumber(&f, std::move(p));
}

CyclotomicNumber CyclotomicNumber::root_of_unity(unsigned n, std::int64_t m) {
  if (n == 0) throw DomainError("root_of_unity: n must be positive");
  std::int64_t e = m % static_cast<std::int64_t>(n);
  if (e < 0) e += n;
  std::vector<Rational> p(static_cast<std::size_t>(e) + 1);
  p[static_cast<std::size_t>(e)] = 1;
  return from_polynomial(n, p);
}

unsigned CyclotomicNumber::order() const { return field_->n; }

bool CyclotomicNumber::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const Rational& c) { return sgn(c) == 0; });
}

bool CyclotomicNumber::is_one() const { return is_rational() && coeffs_[0] == 1; }

bool CyclotomicNumber::is_rational() const {
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(),
                     [](const Rational& c) { return sgn(c) == 0; });
}

void CyclotomicNumber::require_same_field(const CyclotomicNumber& other) const {
  if (field_ != other.field_)
    throw DomainError("cyclotomic order mismatch: " + std::to_string(order()) +
                      " vs " + std::to_string(other.order()));
}

CyclotomicNumber& CyclotomicNumber::operator+=(const CyclotomicNumber& other) {
  require_same_field(other);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  return *this;
}

CyclotomicNumber& CyclotomicNumber::operator-=(const CyclotomicNumber& other) {
  require_same_field(other);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  return *this;
}

CyclotomicNumber CyclotomicNumber::operator-() const {
  CyclotomicNumber r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b) {
  a.require_same_field(b);
  const auto& f = *a.field_;
  const unsigned phi = f.phi;
  if (phi == 1) return CyclotomicNumber(a.field_, {Rational(a.coeffs_[0] * b.coeffs_[0])});

  std::vector<Rational> prod(2 * phi - 1);
  for (unsigned i = 0; i < phi; ++i) {
    if (sgn(a.coeffs_[i]) == 0) continue;
    for (unsigned j = 0; j < phi; ++j) {
      if (sgn(b.coeffs_[j]) == 0) continue;
      prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  for (unsigned k = phi; k < 2 * phi - 1; ++k) {
    if (sgn(prod[k]) == 0) continue;
    const auto& row = f.fold[k - phi];
    for (unsigned j = 0; j < phi; ++j)
      if (row[j] != 0) prod[j] += prod[k] * row[j];
  }
  prod.resize(phi);
  return CyclotomicNumber(a.field_, std::move(prod));
}

CyclotomicNumber& CyclotomicNumber::operator*=(const CyclotomicNumber& other) {
  *this = *this * other;
  return *this;
}

CyclotomicNumber& CyclotomicNumber::operator/=(const CyclotomicNumber& other) {
  require_same_field(other);
  *this = *this * other.inverse();
  return *this;
}

namespace {

using QPoly = std::vector<Rational>;

void trim(QPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

// a = q*b + r with deg r < deg b; b nonzero and trimmed.
void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
  r = a;
  trim(r);
  q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, Rational(0));
  const Rational lead_inv = 1 / b.back();
  while (!r.empty() && r.size() >= b.size()) {
    const std::size_t shift = r.size() - b.size();
    const Rational c = r.back() * lead_inv;
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) r[shift + j] -= c * b[j];
    r.pop_back();
    trim(r);
  }
}

QPoly sub_mul(const QPoly& a, const QPoly& q, const QPoly& b) {
  QPoly out(std::max(a.size(), q.size() + b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] -= q[i] * b[j];
  trim(out);
  return out;
}

}  // namespace

CyclotomicNumber CyclotomicNumber::inverse() const {
  if (is_zero()) throw DomainError("division by zero in Q(zeta_" +
                                   std::to_string(order()) + ")");
  if (field_->phi == 1) return CyclotomicNumber(field_, {Rational(1 / coeffs_[0])});

  // Extended Euclid: track s with s*a ≡ r (mod Φ_n).
  QPoly r0(field_->modulus.begin(), field_->modulus.end());
  QPoly r1(coeffs_.begin(), coeffs_.end());
  trim(r1);
  QPoly s0, s1{Rational(1)};
  while (r1.size() > 1) {
    QPoly q, rem;
    divmod(r0, r1, q, rem);
    QPoly s2 = sub_mul(s0, q, s1);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // Φ_n is irreducible, so the last nonzero remainder is a constant.
  if (r1.empty()) throw InternalError("inverse: element shares a factor with Phi_n");
  const Rational c = 1 / r1[0];
  for (auto& x : s1) x *= c;
  return from_polynomial(order(), s1);
}

CyclotomicNumber CyclotomicNumber::pow(std::int64_t e) const {
  CyclotomicNumber base = e < 0 ? inverse() : *this;
  std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
  CyclotomicNumber result(order(), 1L);
  while (k > 0) {
    if (k & 1U) result *= base;
    k >>= 1U;
    if (k > 0) base *= base;
  }
  return result;
}

CyclotomicNumber CyclotomicNumber::embed(unsigned N) const {
  if (N == 0 || N % order() != 0)
    throw DomainError("embed: order " + std::to_string(order()) +
                      " does not divide " + std::to_string(N));
  if (N == order()) return *this;
  const unsigned step = N / order();
  std::vector<Rational> p(static_cast<std::size_t>(step) * (coeffs_.size() - 1) + 1);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) p[k * step] = coeffs_[k];
  return from_polynomial(N, p);
}

bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b) {
  if (a.field_ == b.field_) return a.coeffs_ == b.coeffs_;
  const unsigned n = lcm_order(a.order(), b.order());
  return a.embed(n).coeffs_ == b.embed(n).coeffs_;
}

std::complex<double> CyclotomicNumber::evaluate() const {
  std::complex<double> z = std::polar(1.0, 2.0 * std::numbers::pi / order());
  std::complex<double> acc = 0.0, power = 1.0;
  for (const auto& c : coeffs_) {
    acc += c.get_d() * power;
    power *= z;
  }
  return acc;
}

std::string CyclotomicNumber::to_string(const std::string& generator) const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const Rational& c = coeffs_[k];
    if (sgn(c) == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) out << '-';
    } else {
      out << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      out << mag.get_str();
      continue;
    }
    if (mag != 1) out << mag.get_str() << '*';
    out << generator;
    if (k > 1) out << '^' << k;
  }
  if (first) return "0";
  return out.str();
}

std::vector<std::string> CyclotomicNumber::coeff_strings() const {
  std::vector<std::string> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.get_str());
  return out;
}

namespace {
std::size_t hash_mpz(mpz_srcptr z) {
  std::size_t h = static_cast<std::size_t>(mpz_sgn(z)) * 0x100000001b3ULL;
  const std::size_t limbs = mpz_size(z);
  for (std::size_t k = 0; k < limbs; ++k)
    h ^= static_cast<std::size_t>(mpz_getlimbn(z, static_cast<mp_size_t>(k))) +
         0x9e3779b97f4a7c15ULL + (h << 6U) + (h >> 2U);
  return h;
}
}  // namespace

std::size_t CyclotomicNumber::hash() const {
  std::size_t seed = order();
  for (const auto& c : coeffs_) {
    const std::size_t h = hash_mpz(c.get_num_mpz_t()) * 31 + hash_mpz(c.get_den_mpz_t());
    seed ^= h + 0x9e3779b97f4a7c15ULL + (seed << 6U) + (seed >> 2U);
  }
  return seed;
}

}  // namespace hyperarr
