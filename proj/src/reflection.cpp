#include "hyperarr/reflection.hpp"

#include <array>
#include <cctype>
#include <charconv>

#include "hyperarr/error.hpp"
#include "hyperarr/parse.hpp"

namespace hyperarr {

std::size_t monomial_count(unsigned r, unsigned p, std::size_t l) {
  const std::size_t pairs = l * (l - 1) / 2 * r;
  return pairs + ((p != r && r >= 2) ? l : 0);
}

Arrangement monomial_arrangement(unsigned r, unsigned p, std::size_t l) {
  if (r == 0 || p == 0 || r % p != 0)
    throw DomainError("G(" + std::to_string(r) + "," + std::to_string(p) + "," +
                      std::to_string(l) + "): p must divide r");
  if (l == 0) throw DomainError("G(r,p,l): l must be positive");
  std::vector<LinearForm> forms;
  // r = 1 is the braid case: no coordinate hyperplanes whatever p is.
  if (p != r && r >= 2) {
    for (std::size_t i = 0; i < l; ++i) {
      Vector v = zero_vector(l, r);
      v[i] = CyclotomicNumber(r, 1L);
      forms.emplace_back(std::move(v));
    }
  }
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = i + 1; j < l; ++j) {
      for (unsigned m = 0; m < r; ++m) {
        Vector v = zero_vector(l, r);
        v[i] = CyclotomicNumber(r, 1L);
        v[j] = -CyclotomicNumber::root_of_unity(r, m);
        forms.emplace_back(std::move(v));
      }
    }
  }
  return Arrangement(l, r, std::move(forms));
}

namespace {

struct Transcription {
  std::string_view name;
  std::size_t ambient;
  unsigned order;
  std::vector<std::string_view> factors;
};

// Linear factors of the defining polynomials, in the order written there.
// In H3, w stands for ω = η² + η³ with η a primitive 5th root of unity.
const std::vector<Transcription>& transcriptions() {
  static const std::vector<Transcription> table = {
      {"D4", 4, 1,
       {"a - b", "a + b", "a - c", "a + c", "a - d", "a + d",
        "b - c", "b + c", "b - d", "b + d", "c - d", "c + d"}},
      {"F4", 4, 1,
       {"a", "b", "c", "d", "a + b", "b + c", "c + d", "b + 2c", "a + b + c",
        "b + c + d", "a + b + 2c", "a + b + c + d", "b + 2c + d", "a + 2b + 2c",
        "a + b + 2c + d", "b + 2c + 2d", "a + 2b + 2c + d", "a + b + 2c + 2d",
        "a + 2b + 3c + d", "a + 2b + 2c + 2d", "a + 2b + 3c + 2d", "a + 2b + 4c + 2d",
        "a + 3b + 4c + 2d", "2a + 3b + 4c + 2d"}},
      {"H3", 3, 5,
       {"a", "b", "c", "a - w b", "a - (w+1) b", "b + c", "a + b", "a - w b - w c",
        "a - (w+1) b - (w+1) c", "a + b + c", "a - w b - (w+1) c", "a - w b + c",
        "a + b + (w+2) c", "a + b - (w+1) c", "a - 2(w+1) b - (w+1) c"}},
      {"G25", 3, 3,
       {"a", "b", "c", "a + b + c", "a + b + z c", "a + b + z^2 c", "a + z b + c",
        "a + z b + z c", "a + z b + z^2 c", "a + z^2 b + c", "a + z^2 b + z c",
        "a + z^2 b + z^2 c"}},
      {"G26", 3, 3,
       {"a", "b", "c", "a - b", "a - c", "b - c", "a - z b", "a - z^2 b", "a - z c",
        "a - z^2 c", "b - z c", "b - z^2 c", "a + b + c", "a + b + z c", "a + b + z^2 c",
        "a + z b + c", "a + z b + z c", "a + z b + z^2 c", "a + z^2 b + c",
        "a + z^2 b + z c", "a + z^2 b + z^2 c"}},
      {"G29", 4, 4,
       {"a", "b", "c", "d", "a - b", "a - c", "a - d", "b - c", "b - d", "c - d",
        "a + c", "a + b", "a + d", "b + c", "b + d", "c + d",
        "a - b + ic + id", "a - b + ic - id", "a - b - ic - id", "a - b - ic + id",
        "a + b + ic + id", "a + b - ic - id", "a + b - ic + id", "a + b + ic - id",
        "a - ib + ic + d", "a - ib - c - id", "a - ib - c + id", "a - ib + ic - d",
        "a - ib - ic + d", "a - ib + c - id", "a - ib - ic - d", "a + ib - c + id",
        "a + ib - c - id", "a + ib - ic + d", "a + ib - ic - d", "a + ib + c + id",
        "a + ib + ic + d", "a + ib + ic - d", "a - ib + c + id", "a + ib + c - id"}},
      {"G31", 4, 4,
       {"a", "b", "c", "d", "a - b", "a - c", "a - d", "b - c", "b - d", "c - d",
        "a + b", "a + c", "a + d", "b + c", "b + d", "c + d",
        "a - ib", "a - ic", "a - id", "b - ic", "b - id", "c - id",
        "a + ib", "a + ic", "a + id", "b + ic", "b + id", "c + id",
        "a - b - c - d", "a - b + c + d", "a - b + c - d", "a - b - c + d",
        "a + b + c + d", "a + b - c + d", "a + b - c - d", "a + b + c - d",
        "a - b - ic - id", "a - b + ic + id", "a - b - ic + id", "a - b + ic - id",
        "a + b - ic - id", "a + b + ic + id", "a + b + ic - id", "a + b - ic + id",
        "a - ib - c - id", "a - ib + c - id", "a - ib - c + id", "a - ib + c + id",
        "a - ib + ic + d", "a - ib + ic - d", "a - ib - ic + d", "a - ib - ic - d",
        "a + ib + c - id", "a + ib - c - id", "a + ib - c + id", "a + ib + c + id",
        "a + ib - ic + d", "a + ib - ic - d", "a + ib + ic - d", "a + ib + ic + d"}},
  };
  return table;
}

std::string expand_omega(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == 'w') out += "(z^2 + z^3)";
    else out.push_back(c);
  }
  return out;
}

}  // namespace

Arrangement exceptional_arrangement(std::string_view name) {
  for (const auto& t : transcriptions()) {
    if (t.name != name) continue;
    std::vector<LinearForm> forms;
    for (auto f : t.factors) forms.push_back(parse_form(expand_omega(f), t.ambient, t.order));
    return Arrangement(t.ambient, t.order, std::move(forms));
  }
  throw DomainError("unknown exceptional arrangement '" + std::string(name) + "'");
}

std::vector<std::string> exceptional_names() {
  std::vector<std::string> out;
  for (const auto& t : transcriptions()) out.emplace_back(t.name);
  return out;
}

namespace {

bool monomial_supersolvable(unsigned r, unsigned p, std::size_t l) {
  if (l <= 2 || r == 1 || p != r) return true;
  return r == 2 && l == 3;  // D3 = A3
}

CatalogEntry monomial_entry(unsigned r, unsigned p, std::size_t l) {
  CatalogEntry e;
  e.name = "G(" + std::to_string(r) + "," + std::to_string(p) + "," + std::to_string(l) + ")";
  e.ambient = l;
  e.field_order = r;
  e.expected_count = monomial_count(r, p, l);
  e.supersolvable = monomial_supersolvable(r, p, l);
  e.rank = r == 1 ? l - 1 : l;
  return e;
}

}  // namespace

std::vector<CatalogEntry> catalog() {
  std::vector<CatalogEntry> out;
  for (const auto& t : transcriptions())
    out.push_back(CatalogEntry{std::string(t.name), t.ambient, t.order, t.factors.size(), false,
                               t.ambient});
  for (unsigned r = 1; r <= 4; ++r)
    for (std::size_t l = 3; l <= 5; ++l) out.push_back(monomial_entry(r, 1, l));
  const std::array<std::array<unsigned, 3>, 9> non_ss = {{
      {3, 3, 3}, {4, 4, 3}, {5, 5, 3}, {3, 3, 4}, {4, 4, 4}, {3, 3, 5}, {2, 2, 5}, {2, 2, 6},
      {2, 2, 3},
  }};
  for (const auto& [r, p, l] : non_ss) out.push_back(monomial_entry(r, p, l));
  const std::array<std::array<unsigned, 3>, 5> rank_two = {{
      {2, 1, 2}, {3, 1, 2}, {3, 3, 2}, {4, 4, 2}, {4, 2, 2},
  }};
  for (const auto& [r, p, l] : rank_two) out.push_back(monomial_entry(r, p, l));
  return out;
}

namespace {

bool parse_uint(std::string_view s, unsigned& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// "X(1,2,3)" or "X(4)" or "X4" with the given prefix; returns the integers.
std::optional<std::vector<unsigned>> parameters(std::string_view s, std::string_view prefix) {
  if (s.substr(0, prefix.size()) != prefix) return std::nullopt;
  s.remove_prefix(prefix.size());
  std::vector<unsigned> out;
  if (!s.empty() && s.front() == '(') {
    if (s.back() != ')') return std::nullopt;
    s = s.substr(1, s.size() - 2);
    while (true) {
      const auto comma = s.find(',');
      unsigned v = 0;
      if (!parse_uint(trim(s.substr(0, comma)), v)) return std::nullopt;
      out.push_back(v);
      if (comma == std::string_view::npos) break;
      s.remove_prefix(comma + 1);
    }
    return out;
  }
  unsigned v = 0;
  if (!parse_uint(s, v)) return std::nullopt;
  out.push_back(v);
  return out;
}

}  // namespace

std::optional<Arrangement> named_arrangement(std::string_view name) {
  name = trim(name);
  for (const auto& t : transcriptions())
    if (t.name == name) return exceptional_arrangement(name);
  if (auto p = parameters(name, "Boolean")) {
    if (p->size() != 1 || p->front() == 0) throw DomainError("Boolean(n) needs n >= 1");
    const std::size_t l = p->front();
    std::vector<LinearForm> forms;
    for (std::size_t i = 0; i < l; ++i) {
      Vector v = zero_vector(l, 1);
      v[i] = CyclotomicNumber(1, 1L);
      forms.emplace_back(std::move(v));
    }
    return Arrangement(l, 1, std::move(forms));
  }
  if (auto p = parameters(name, "G")) {
    if (p->size() != 3) return std::nullopt;
    return monomial_arrangement((*p)[0], (*p)[1], (*p)[2]);
  }
  if (auto p = parameters(name, "A")) {
    if (p->size() != 1 || p->front() == 0) throw DomainError("A(n) needs n >= 1");
    return monomial_arrangement(1, 1, p->front() + 1);
  }
  if (auto p = parameters(name, "B")) {
    if (p->size() != 1 || p->front() == 0) throw DomainError("B(n) needs n >= 1");
    return monomial_arrangement(2, 1, p->front());
  }
  if (auto p = parameters(name, "D")) {
    if (p->size() != 1 || p->front() < 2) throw DomainError("D(n) needs n >= 2");
    return monomial_arrangement(2, 2, p->front());
  }
  return std::nullopt;
}

}  // namespace hyperarr
