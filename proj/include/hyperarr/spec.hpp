#pragma once

// Arrangement specs as accepted on the command line:
//
//   D4, G(3,1,3), A(3), B(3), D(5), Boolean(4)   catalog names
//   path/to/file.arr                             arrangement files
//   B(2) * A(2)                                  products, left to right
//
// A piece that is neither a catalog name nor an existing file is rejected
// with ParseError before anything is computed.

#include <string>
#include <string_view>
#include <vector>

#include "hyperarr/arrangement.hpp"

namespace hyperarr {

/// Splits on '*' outside parentheses and trims each piece.
std::vector<std::string> split_spec(std::string_view spec);

Arrangement resolve_spec(std::string_view spec);

}  // namespace hyperarr
