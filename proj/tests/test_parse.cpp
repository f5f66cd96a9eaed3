#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hyperarr/error.hpp"
#include "hyperarr/parse.hpp"
#include "hyperarr/reflection.hpp"
#include "hyperarr/spec.hpp"
#include "support.hpp"

using namespace hyperarr;

namespace {
CyclotomicNumber z(unsigned n, std::int64_t m = 1) { return CyclotomicNumber::root_of_unity(n, m); }
CyclotomicNumber Q(unsigned n, long v) { return CyclotomicNumber(n, v); }

Arrangement read(const std::string& text) {
  std::istringstream in(text);
  return read_arrangement(in);
}
}  // namespace

TEST_CASE("scalars") {
  CHECK(parse_scalar("3/2", 1) == CyclotomicNumber(1, Rational(3, 2)));
  CHECK(parse_scalar("1 - 2*(z+1)", 5) == Q(5, -1) - Q(5, 2) * z(5));
  CHECK(parse_scalar("i^2", 4) == Q(4, -1));
  CHECK(parse_scalar("i", 12) == z(12, 3));
  CHECK(parse_scalar("z^-1", 3) == z(3, 2));
  CHECK(parse_scalar("2(z + 1)", 3) == Q(3, 2) * (z(3) + Q(3, 1)));
  CHECK(parse_scalar("-(1/2)", 1) == CyclotomicNumber(1, Rational(-1, 2)));
  CHECK(parse_scalar("1/(1+i)", 4) == (Q(4, 1) + z(4)).inverse());
  CHECK_THROWS_AS(parse_scalar("i", 3), ParseError);
  CHECK_THROWS_AS(parse_scalar("1/0", 1), ParseError);
  CHECK_THROWS_AS(parse_scalar("1 +", 1), ParseError);
  CHECK_THROWS_AS(parse_scalar("(1", 1), ParseError);
  CHECK_THROWS_AS(parse_scalar("q", 1), ParseError);
}

TEST_CASE("forms") {
  CHECK(parse_form("2a - 4b", 2, 1) == LinearForm(Vector{Q(1, 1), Q(1, -2)}));
  CHECK(parse_form("a + ib - ic + d", 4, 4).coeffs()[1] == z(4));
  CHECK(parse_form("x1 - z x5", 5, 3).coeffs()[4] == -z(3));
  CHECK(parse_form("(1 + z)b - c", 3, 3).lead() == 1);
  CHECK_THROWS_AS(parse_form("a + 1", 2, 1), ParseError);
  CHECK_THROWS_AS(parse_form("a - a", 2, 1), ParseError);
  CHECK_THROWS_AS(parse_form("a*b", 2, 1), ParseError);
  CHECK_THROWS_AS(parse_form("c", 2, 1), ParseError);
  CHECK_THROWS_AS(parse_form("a", 5, 1), ParseError);  // letters only for ambient <= 4
  CHECK_THROWS_AS(parse_form("x6", 5, 1), ParseError);
}

TEST_CASE("arrangement files") {
  const auto a = read("# braid\nambient 3 field 1\na - b\n\nb - c  # trailing\na - c\n2a - 2b\n");
  CHECK(a.size() == 3);
  CHECK(a.duplicates_removed() == 1);
  CHECK(read("ambient 3 field 4\n").size() == 0);
  CHECK_THROWS_AS(read("a - b\n"), ParseError);
  CHECK_THROWS_AS(read("ambient x field 1\n"), ParseError);
  try {
    read("ambient 2 field 1\na\nb +\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(read_arrangement_file("/nonexistent/file.arr"), ParseError);
}

TEST_CASE("write/read round trip on the catalog") {
  for (const auto& e : catalog()) {
    CAPTURE(e.name);
    const auto a = *named_arrangement(e.name);
    const auto b = read(write_arrangement(a));
    CHECK(a == b);
  }
}

TEST_CASE("property: random arrangements round-trip through text [1000 cases]") {
  testing::Gen g(0x7E47);
  const std::vector<unsigned> orders{1, 3, 4, 5, 12};
  for (int iter = 0; iter < 1000; ++iter) {
    const unsigned n = g.pick(orders);
    const auto l = static_cast<std::size_t>(g.range(1, 6));
    const auto a = g.arrangement(l, n, 6);
    CHECK(read(write_arrangement(a)) == a);
    for (const auto& f : a.hyperplanes())
      CHECK(parse_form(f.to_string(coordinate_names(l)), l, n) == f);
  }
}

TEST_CASE("specs") {
  CHECK(split_spec(" G(3,1,3) * D4 ") == std::vector<std::string>{"G(3,1,3)", "D4"});
  CHECK(resolve_spec("A(3)").size() == 6);
  const auto p = resolve_spec("B(2) * A(2)");
  CHECK(p.ambient() == 5);
  CHECK(p.size() == 7);
  CHECK_THROWS_AS(resolve_spec("Nope"), ParseError);
  CHECK_THROWS_AS(resolve_spec("D4 *"), ParseError);
  CHECK_THROWS_AS(resolve_spec("G(3,1,3"), ParseError);
  CHECK_THROWS_AS(resolve_spec("G(3,2,3)"), ParseError);  // 2 does not divide 3

  const auto path = std::filesystem::temp_directory_path() / "hyperarr_spec_test.arr";
  {
    std::ofstream out(path);
    out << "ambient 2 field 1\na\nb\na - b\n";
  }
  CHECK(resolve_spec(path.string()).size() == 3);
  CHECK(resolve_spec(path.string() + " * " + path.string()).size() == 6);
  std::filesystem::remove(path);
}
