#include "hyperarr/spec.hpp"

#include <filesystem>

#include "hyperarr/error.hpp"
#include "hyperarr/parse.hpp"
#include "hyperarr/reflection.hpp"

namespace hyperarr {

namespace {
std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}
}  // namespace

std::vector<std::string> split_spec(std::string_view spec) {
  std::vector<std::string> pieces;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t k = 0; k <= spec.size(); ++k) {
    const char c = k < spec.size() ? spec[k] : '*';
    if (c == '(') ++depth;
    if (c == ')' && --depth < 0) throw ParseError("unbalanced ')' in spec '" + std::string(spec) + "'");
    if (c == '*' && depth == 0) {
      std::string piece = trim(spec.substr(start, k - start));
      if (piece.empty()) throw ParseError("empty factor in spec '" + std::string(spec) + "'");
      pieces.push_back(std::move(piece));
      start = k + 1;
    }
  }
  if (depth != 0) throw ParseError("unbalanced '(' in spec '" + std::string(spec) + "'");
  return pieces;
}

Arrangement resolve_spec(std::string_view spec) {
  const auto pieces = split_spec(spec);
  std::vector<Arrangement> factors;
  for (const auto& p : pieces) {
    std::optional<Arrangement> named;
    try {
      named = named_arrangement(p);
    } catch (const DomainError& e) {
      throw ParseError("invalid arrangement '" + p + "': " + e.what());
    }
    if (named) {
      factors.push_back(std::move(*named));
      continue;
    }
    std::error_code ec;
    if (std::filesystem::is_regular_file(p, ec)) {
      factors.push_back(read_arrangement_file(p));
      continue;
    }
    throw ParseError("unknown arrangement '" + p + "' (not a catalog name or a file)");
  }
  Arrangement out = std::move(factors.front());
  for (std::size_t k = 1; k < factors.size(); ++k) out = product(out, factors[k]);
  return out;
}

}  // namespace hyperarr
