#pragma once

// Exact arithmetic in cyclotomic fields Q(ζ_n).
//
// An element of Q(ζ_n) is stored by its coordinates in the power basis
// 1, ζ, ..., ζ^{φ(n)-1}, i.e. as a polynomial reduced modulo the n-th
// cyclotomic polynomial Φ_n. The representation is canonical, so equality
// is coordinate-wise.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace hyperarr {

using Rational = mpq_class;

/// Coefficients of Φ_n, constant term first. Monic, degree φ(n).
std::vector<std::int64_t> cyclotomic_polynomial(unsigned n);

/// Euler's totient.
unsigned euler_phi(unsigned n);

unsigned lcm_order(unsigned a, unsigned b);

namespace detail {
struct FieldData;
const FieldData& field_data(unsigned n);
}  // namespace detail

class CyclotomicNumber {
 public:
  /// Zero in Q.
  CyclotomicNumber();
  /// Zero in Q(ζ_order).
  explicit CyclotomicNumber(unsigned order);
  /// The rational `value` viewed in Q(ζ_order).
  CyclotomicNumber(unsigned order, const Rational& value);
  CyclotomicNumber(unsigned order, long value);

  /// Builds Σ coeffs[k] ζ^k and reduces it modulo Φ_order; coeffs may have
  /// any length.
  static CyclotomicNumber from_polynomial(unsigned order,
                                          std::span<const Rational> coeffs);

  /// ζ_n^{m mod n}; m may be negative.
  static CyclotomicNumber root_of_unity(unsigned n, std::int64_t m);

  unsigned order() const;
  /// Power-basis coordinates; length φ(order).
  std::span<const Rational> coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_one() const;
  /// True when the element lies in Q (only the constant coordinate is set).
  bool is_rational() const;

  CyclotomicNumber& operator+=(const CyclotomicNumber& other);
  CyclotomicNumber& operator-=(const CyclotomicNumber& other);
  CyclotomicNumber& operator*=(const CyclotomicNumber& other);
  CyclotomicNumber& operator/=(const CyclotomicNumber& other);
  CyclotomicNumber operator-() const;

  friend CyclotomicNumber operator+(CyclotomicNumber a,
                                    const CyclotomicNumber& b) {
    return a += b;
  }
  friend CyclotomicNumber operator-(CyclotomicNumber a,
                                    const CyclotomicNumber& b) {
    return a -= b;
  }
  friend CyclotomicNumber operator*(const CyclotomicNumber& a,
                                    const CyclotomicNumber& b);
  friend CyclotomicNumber operator/(CyclotomicNumber a,
                                    const CyclotomicNumber& b) {
    return a /= b;
  }

  /// Throws DomainError on zero.
  CyclotomicNumber inverse() const;

  /// Integer power; negative exponents invert first.
  CyclotomicNumber pow(std::int64_t e) const;

  /// Image in Q(ζ_N) under ζ_n ↦ ζ_N^{N/n}. Requires order() | N.
  CyclotomicNumber embed(unsigned N) const;

  /// Equal after embedding both sides into Q(ζ_lcm).
  friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b);

  /// Floating-point value at ζ = e^{2πi/n}. Diagnostics only.
  std::complex<double> evaluate() const;

  /// Human-readable polynomial in the generator, e.g. "1 - 2*z^3".
  std::string to_string(const std::string& generator = "z") const;
  /// Coordinates as rational strings ("3/2").
  std::vector<std::string> coeff_strings() const;

  std::size_t hash() const;

 private:
  CyclotomicNumber(const detail::FieldData* field, std::vector<Rational> coeffs)
      : field_(field), coeffs_(std::move(coeffs)) {}
  void require_same_field(const CyclotomicNumber& other) const;

  const detail::FieldData* field_;
  std::vector<Rational> coeffs_;
};

}  // namespace hyperarr
