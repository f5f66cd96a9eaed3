#include "hyperarr/parse.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>

#include "hyperarr/error.hpp"

namespace hyperarr {

namespace {

// Value of a subexpression: constant + Σ linear[j] x_j.
struct Affine {
  CyclotomicNumber constant;
  Vector linear;

  bool is_scalar() const {
    for (const auto& c : linear)
      if (!c.is_zero()) return false;
    return true;
  }
};

class Parser {
 public:
  Parser(std::string_view text, std::size_t ambient, unsigned order)
      : text_(text), ambient_(ambient), order_(order) {}

  Affine parse_all() {
    Affine v = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at column " + std::to_string(pos_ + 1) + " in \"" +
                     std::string(text_) + "\"");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Affine scalar(CyclotomicNumber c) const {
    return Affine{std::move(c), zero_vector(ambient_, order_)};
  }

  static Affine add(Affine a, const Affine& b, bool negate) {
    if (negate) {
      a.constant -= b.constant;
      for (std::size_t j = 0; j < a.linear.size(); ++j) a.linear[j] -= b.linear[j];
    } else {
      a.constant += b.constant;
      for (std::size_t j = 0; j < a.linear.size(); ++j) a.linear[j] += b.linear[j];
    }
    return a;
  }

  Affine multiply(const Affine& a, const Affine& b) {
    if (!a.is_scalar() && !b.is_scalar()) fail("product of two linear terms");
    const Affine& s = a.is_scalar() ? a : b;
    const Affine& other = a.is_scalar() ? b : a;
    Affine out = other;
    out.constant *= s.constant;
    for (auto& c : out.linear) c *= s.constant;
    return out;
  }

  Affine expr() {
    Affine acc = term();
    for (;;) {
      const char c = peek();
      if (c != '+' && c != '-') return acc;
      ++pos_;
      acc = add(std::move(acc), term(), c == '-');
    }
  }

  static bool starts_primary(char c) {
    return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) ||
           c == '(';
  }

  Affine term() {
    Affine acc = unary();
    for (;;) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        acc = multiply(acc, unary());
      } else if (c == '/') {
        ++pos_;
        Affine d = unary();
        if (!d.is_scalar()) fail("division by a linear term");
        if (d.constant.is_zero()) fail("division by zero");
        const CyclotomicNumber inv = d.constant.inverse();
        acc = multiply(acc, scalar(inv));
      } else if (starts_primary(c)) {
        acc = multiply(acc, power());
      } else {
        return acc;
      }
    }
  }

  Affine unary() {
    const char c = peek();
    if (c == '-' || c == '+') {
      ++pos_;
      Affine v = unary();
      if (c == '-') return add(scalar(CyclotomicNumber(order_)), v, true);
      return v;
    }
    return power();
  }

  Affine power() {
    Affine base = primary();
    if (peek() != '^') return base;
    ++pos_;
    bool negative = false;
    if (peek() == '-') {
      negative = true;
      ++pos_;
    }
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    if (!base.is_scalar()) fail("power of a linear term");
    const std::int64_t e = std::stoll(std::string(text_.substr(start, pos_ - start)));
    if (negative && base.constant.is_zero()) fail("division by zero");
    return scalar(base.constant.pow(negative ? -e : e));
  }

  Affine variable(std::size_t j) {
    if (j >= ambient_) fail("coordinate out of range for ambient dimension " + std::to_string(ambient_));
    Affine v = scalar(CyclotomicNumber(order_));
    v.linear[j] = CyclotomicNumber(order_, 1L);
    return v;
  }

  Affine primary() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Affine v = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return scalar(CyclotomicNumber(order_, Rational(std::string(text_.substr(start, pos_ - start)))));
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) {
      if (c == '\0') fail("unexpected end of input");
      fail("unexpected '" + std::string(1, c) + "'");
    }
    ++pos_;
    switch (c) {
      case 'z':
        return scalar(CyclotomicNumber::root_of_unity(order_, 1));
      case 'i':
        if (order_ % 4 != 0) fail("'i' needs a field order divisible by 4");
        return scalar(CyclotomicNumber::root_of_unity(order_, order_ / 4));
      case 'x': {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected coordinate index after 'x'");
        const std::size_t k = std::stoul(std::string(text_.substr(start, pos_ - start)));
        if (k == 0) fail("coordinates are numbered from x1");
        return variable(k - 1);
      }
      case 'a':
      case 'b':
      case 'c':
      case 'd':
        if (ambient_ > 4) fail("letter coordinates need ambient dimension <= 4");
        return variable(static_cast<std::size_t>(c - 'a'));
      default:
        --pos_;
        fail("unknown symbol '" + std::string(1, c) + "'");
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t ambient_;
  unsigned order_;
};

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  std::string s = hash == std::string::npos ? line : line.substr(0, hash);
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

CyclotomicNumber parse_scalar(std::string_view text, unsigned order) {
  if (order == 0) throw ParseError("field order must be positive");
  Affine v = Parser(text, 0, order).parse_all();
  return v.constant;
}

LinearForm parse_form(std::string_view text, std::size_t ambient, unsigned order) {
  if (order == 0) throw ParseError("field order must be positive");
  if (ambient == 0) throw ParseError("linear forms need a positive ambient dimension");
  Affine v = Parser(text, ambient, order).parse_all();
  if (!v.constant.is_zero())
    throw ParseError("form has a nonzero constant term: \"" + std::string(text) + "\"");
  if (v.is_scalar()) throw ParseError("form is identically zero: \"" + std::string(text) + "\"");
  return LinearForm(std::move(v.linear));
}

Arrangement read_arrangement(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  std::size_t ambient = 0;
  unsigned order = 1;
  std::vector<LinearForm> forms;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = strip_comment(line);
    if (body.empty()) continue;
    try {
      if (!have_header) {
        std::istringstream hs(body);
        std::string kw1, kw2, extra;
        long l = -1, n = -1;
        if (!(hs >> kw1 >> l >> kw2 >> n) || kw1 != "ambient" || kw2 != "field" || (hs >> extra))
          throw ParseError("expected header 'ambient <l> field <n>'");
        if (l < 0 || n < 1) throw ParseError("header values out of range");
        ambient = static_cast<std::size_t>(l);
        order = static_cast<unsigned>(n);
        have_header = true;
        continue;
      }
      forms.push_back(parse_form(body, ambient, order));
    } catch (const Error& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!have_header) throw ParseError("arrangement file has no 'ambient <l> field <n>' header");
  return Arrangement(ambient, order, std::move(forms));
}

Arrangement read_arrangement_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open arrangement file '" + path + "'");
  return read_arrangement(in);
}

std::string write_arrangement(const Arrangement& a) {
  std::ostringstream out;
  out << "ambient " << a.ambient() << " field " << a.field_order() << '\n';
  const auto names = coordinate_names(a.ambient());
  for (const auto& f : a.hyperplanes()) out << f.to_string(names) << '\n';
  return out.str();
}

}  // namespace hyperarr
