#pragma once

// Text syntax for field elements and linear forms.
//
//   rational literals, `z` for ζ_n, `i` for ζ_4 (requires 4 | n),
//   `^` integer powers, `+ - * /`, parentheses, and juxtaposition as
//   multiplication ("2a", "ic", "(1+z)b").
//
// Linear forms may also use the coordinates x1..xℓ, and a, b, c, d when
// ℓ <= 4. A form must be homogeneous of degree one.
//
// Arrangement files:
//
//   # comment
//   ambient 3 field 3
//   a + b + z*c
//   a - z^2 b
//
// one form per line after the header.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>

#include "hyperarr/arrangement.hpp"

namespace hyperarr {

/// Throws ParseError.
CyclotomicNumber parse_scalar(std::string_view text, unsigned order);

/// Throws ParseError, including for forms that are zero or not linear.
LinearForm parse_form(std::string_view text, std::size_t ambient, unsigned order);

/// Throws ParseError with the offending line number.
Arrangement read_arrangement(std::istream& in);
Arrangement read_arrangement_file(const std::string& path);

/// Round-trips through read_arrangement.
std::string write_arrangement(const Arrangement& a);

}  // namespace hyperarr
