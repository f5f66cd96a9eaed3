#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace hyperarr {

/// Fixed-width (set at construction) bitset over hyperplane indices.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  std::size_t size() const { return bits_; }

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool none() const {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }

  Bitset& operator&=(const Bitset& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }
  Bitset& operator|=(const Bitset& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    return *this;
  }
  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }

  /// True iff every bit of *this is set in `o`.
  bool subset_of(const Bitset& o) const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if ((words_[k] & ~o.words_[k]) != 0) return false;
    return true;
  }

  /// Indices of set bits, increasing.
  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < words_.size(); ++k) {
      std::uint64_t w = words_[k];
      while (w != 0) {
        out.push_back(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
    return out;
  }

  /// Calls f(i) for each set bit i in increasing order.
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      std::uint64_t w = words_[k];
      while (w != 0) {
        f(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  friend bool operator==(const Bitset&, const Bitset&) = default;

  /// Deterministic flat order: at the lowest index where two sets differ,
  /// the set containing that index comes first.
  friend bool operator<(const Bitset& a, const Bitset& b) {
    for (std::size_t k = 0; k < a.words_.size(); ++k) {
      const std::uint64_t diff = a.words_[k] ^ b.words_[k];
      if (diff == 0) continue;
      const std::uint64_t low = diff & (~diff + 1);
      return (a.words_[k] & low) != 0;
    }
    return false;
  }

  std::size_t hash() const {
    std::size_t seed = bits_;
    for (auto w : words_) seed ^= w + 0x9e3779b97f4a7c15ULL + (seed << 6U) + (seed >> 2U);
    return seed;
  }

  /// Hex digits, least-significant word first, 16 digits per word.
  std::string to_hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    std::string s;
    for (auto w : words_)
      for (int shift = 60; shift >= 0; shift -= 4) s.push_back(digits[(w >> shift) & 0xFU]);
    return s;
  }

  static Bitset from_hex(std::size_t bits, const std::string& hex);

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitsetHash {
  std::size_t operator()(const Bitset& b) const { return b.hash(); }
};

inline Bitset Bitset::from_hex(std::size_t bits, const std::string& hex) {
  Bitset b(bits);
  if (hex.size() != b.words_.size() * 16) return Bitset();
  for (std::size_t k = 0; k < b.words_.size(); ++k) {
    std::uint64_t w = 0;
    for (std::size_t d = 0; d < 16; ++d) {
      const char c = hex[k * 16 + d];
      unsigned v = 0;
      if (c >= '0' && c <= '9') v = static_cast<unsigned>(c - '0');
      else if (c >= 'a' && c <= 'f') v = static_cast<unsigned>(c - 'a' + 10);
      else return Bitset();
      w = (w << 4U) | v;
    }
    b.words_[k] = w;
  }
  return b;
}

}  // namespace hyperarr
