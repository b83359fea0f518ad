#include "dynmahler/parse.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <sstream>
#include <utility>
#include <vector>

namespace dynmahler {
namespace {

struct Monomial {
  std::map<char, int> powers;  // variable name -> exponent
  bool integer = true;
  BigInt int_coeff{1};
  Complex complex_coeff{1.0, 0.0};
};

class Parser {
 public:
  Parser(std::string_view text, std::string_view allowed)
      : text_(text), allowed_(allowed) {}

  std::vector<Monomial> parse_expr() {
    std::vector<Monomial> terms;
    skip_ws();
    if (at_end()) throw ParseError("empty polynomial", pos_);
    int sign = 1;
    if (peek() == '+' || peek() == '-') {
      sign = (get() == '-') ? -1 : 1;
      skip_ws();
    }
    terms.push_back(parse_term(sign));
    for (;;) {
      skip_ws();
      if (at_end()) break;
      const char c = peek();
      if (c != '+' && c != '-')
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
      ++pos_;
      skip_ws();
      terms.push_back(parse_term(c == '-' ? -1 : 1));
    }
    return terms;
  }

  Complex parse_single_literal() {
    skip_ws();
    int sign = 1;
    if (!at_end() && (peek() == '+' || peek() == '-')) {
      sign = (get() == '-') ? -1 : 1;
      skip_ws();
    }
    Monomial m;
    if (!at_end() && peek() == '(') {
      m.integer = false;
      m.complex_coeff = parse_paren_complex();
    } else {
      parse_number(m);
    }
    skip_ws();
    if (!at_end()) throw ParseError("trailing characters", pos_);
    return double(sign) * (m.integer ? to_complex(m.int_coeff) : m.complex_coeff);
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  char get() { return text_[pos_++]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }

  Monomial parse_term(int sign) {
    Monomial m;
    bool has_coeff = false;
    if (!at_end() && (is_digit(peek()) || peek() == '.')) {
      parse_number(m);
      has_coeff = true;
    } else if (!at_end() && peek() == '(') {
      m.integer = false;
      m.complex_coeff = parse_paren_complex();
      has_coeff = true;
    }
    bool has_var = false;
    for (;;) {
      skip_ws();
      const std::size_t save = pos_;
      if (!at_end() && peek() == '*') {
        ++pos_;
        skip_ws();
        if (at_end() || !std::isalpha(static_cast<unsigned char>(peek())))
          throw ParseError("expected variable after '*'", pos_);
      }
      if (at_end() || !std::isalpha(static_cast<unsigned char>(peek()))) {
        pos_ = save;
        break;
      }
      parse_varpow(m);
      has_var = true;
    }
    if (!has_coeff && !has_var) throw ParseError("expected term", pos_);
    if (sign < 0) {
      m.int_coeff = -m.int_coeff;
      m.complex_coeff = -m.complex_coeff;
    }
    return m;
  }

  void parse_varpow(Monomial& m) {
    const std::size_t at = pos_;
    const char v = get();
    if (allowed_.find(v) == std::string_view::npos)
      throw ParseError(std::string("unknown variable '") + v + "'", at);
    int exponent = 1;
    skip_ws();
    if (!at_end() && peek() == '^') {
      ++pos_;
      skip_ws();
      const std::size_t start = pos_;
      while (!at_end() && is_digit(peek())) ++pos_;
      if (start == pos_) throw ParseError("expected exponent", pos_);
      const auto digits = text_.substr(start, pos_ - start);
      auto [ptr, ec] =
          std::from_chars(digits.data(), digits.data() + digits.size(), exponent);
      if (ec != std::errc()) throw ParseError("exponent out of range", start);
    }
    m.powers[v] += exponent;
  }

  // int or decimal; sets the integer flag accordingly.
  void parse_number(Monomial& m) {
    const std::size_t start = pos_;
    bool decimal = false;
    while (!at_end() && is_digit(peek())) ++pos_;
    if (!at_end() && peek() == '.') {
      decimal = true;
      ++pos_;
      while (!at_end() && is_digit(peek())) ++pos_;
    }
    if (!at_end() && (peek() == 'e' || peek() == 'E')) {
      decimal = true;
      ++pos_;
      if (!at_end() && (peek() == '+' || peek() == '-')) ++pos_;
      const std::size_t exp_start = pos_;
      while (!at_end() && is_digit(peek())) ++pos_;
      if (exp_start == pos_) throw ParseError("malformed exponent in number", pos_);
    }
    const std::string lit(text_.substr(start, pos_ - start));
    if (lit.empty() || lit == ".") throw ParseError("expected number", start);
    if (decimal) {
      m.integer = false;
      m.complex_coeff = Complex(parse_double(lit, start), 0.0);
    } else {
      m.int_coeff = BigInt(lit);
      m.complex_coeff = to_complex(m.int_coeff);
    }
  }

  double parse_double(const std::string& lit, std::size_t at) const {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(lit.data(), lit.data() + lit.size(), v);
    if (ec != std::errc() || ptr != lit.data() + lit.size())
      throw ParseError("malformed decimal '" + lit + "'", at);
    return v;
  }

  double parse_signed_decimal() {
    skip_ws();
    int sign = 1;
    if (!at_end() && (peek() == '+' || peek() == '-')) sign = (get() == '-') ? -1 : 1;
    skip_ws();
    Monomial tmp;
    parse_number(tmp);
    return sign * tmp.complex_coeff.real();
  }

  Complex parse_paren_complex() {
    ++pos_;  // '('
    const double re = parse_signed_decimal();
    skip_ws();
    if (at_end() || (peek() != '+' && peek() != '-'))
      throw ParseError("expected '+' or '-' in complex literal", pos_);
    const double sign = (get() == '-') ? -1.0 : 1.0;
    skip_ws();
    Monomial tmp;
    parse_number(tmp);
    const double im = sign * tmp.complex_coeff.real();
    skip_ws();
    if (at_end() || peek() != 'i') throw ParseError("expected 'i'", pos_);
    ++pos_;
    skip_ws();
    if (at_end() || peek() != ')') throw ParseError("expected ')'", pos_);
    ++pos_;
    return {re, im};
  }

  std::string_view text_;
  std::string_view allowed_;
  std::size_t pos_ = 0;
};

template <typename Scalar>
Scalar coeff_of(const Monomial& m) {
  if constexpr (std::is_same_v<Scalar, BigInt>) {
    return m.int_coeff;
  } else {
    return m.complex_coeff;
  }
}

template <typename Scalar>
ParsedPoly::Variant assemble(const std::vector<Monomial>& terms, char xvar,
                             char yvar) {
  int degx = 0, degy = 0;
  for (const auto& t : terms) {
    for (const auto& [v, e] : t.powers) {
      if (v == yvar) degy = std::max(degy, e);
      else degx = std::max(degx, e);
    }
  }
  CoeffMatrix<Scalar> m = CoeffMatrix<Scalar>::Zero(degx + 1, degy + 1);
  for (const auto& t : terms) {
    int i = 0, j = 0;
    for (const auto& [v, e] : t.powers) (v == yvar ? j : i) += e;
    m(i, j) += coeff_of<Scalar>(t);
  }
  if (yvar == 0) {
    return Poly<Scalar>(CoeffVector<Scalar>(m.col(0)));
  }
  (void)xvar;
  return BivarPoly<Scalar>(std::move(m));
}

template <typename Scalar>
std::string term_power(char var, int e) {
  if (e == 0) return "";
  std::string s(1, var);
  if (e > 1) s += "^" + std::to_string(e);
  return s;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

// Joins signed terms: the first keeps its sign, later ones get " + "/" - ".
void append_term(std::string& out, bool negative, const std::string& body) {
  if (out.empty()) {
    out = negative ? "-" + body : body;
  } else {
    out += negative ? " - " : " + ";
    out += body;
  }
}

void append_int_term(std::string& out, const BigInt& c, const std::string& mono) {
  if (c == 0) return;
  const bool neg = c < 0;
  const BigInt a = neg ? BigInt(-c) : c;
  std::string body;
  if (mono.empty()) body = a.str();
  else if (a == 1) body = mono;
  else body = a.str() + "*" + mono;
  append_term(out, neg, body);
}

void append_complex_term(std::string& out, const Complex& c,
                         const std::string& mono) {
  if (c == Complex(0.0, 0.0)) return;
  std::string body = format_scalar(c);
  if (!mono.empty()) body += "*" + mono;
  append_term(out, false, body);
}

}  // namespace

IntPoly ParsedPoly::int_univariate() const {
  if (const auto* p = std::get_if<IntPoly>(&value_)) return *p;
  throw InputError("expected a univariate polynomial with integer coefficients");
}

ComplexPoly ParsedPoly::complex_univariate() const {
  if (const auto* p = std::get_if<IntPoly>(&value_)) return p->cast<Complex>();
  if (const auto* p = std::get_if<ComplexPoly>(&value_)) return *p;
  throw InputError("expected a univariate polynomial");
}

IntBivarPoly ParsedPoly::int_bivariate() const {
  if (const auto* p = std::get_if<IntBivarPoly>(&value_)) return *p;
  if (const auto* p = std::get_if<IntPoly>(&value_)) return IntBivarPoly::in_x(*p);
  throw InputError("expected a polynomial with integer coefficients");
}

ComplexBivarPoly ParsedPoly::complex_bivariate() const {
  return std::visit(
      [](const auto& p) -> ComplexBivarPoly {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, IntPoly>)
          return ComplexBivarPoly::in_x(p.template cast<Complex>());
        else if constexpr (std::is_same_v<T, ComplexPoly>)
          return ComplexBivarPoly::in_x(p);
        else if constexpr (std::is_same_v<T, IntBivarPoly>)
          return p.template cast<Complex>();
        else
          return p;
      },
      value_);
}

ParsedPoly parse_poly(std::string_view text, std::string_view allowed) {
  Parser parser(text, allowed);
  const std::vector<Monomial> terms = parser.parse_expr();

  std::vector<char> vars;
  bool integer = true;
  for (const auto& t : terms) {
    integer = integer && t.integer;
    for (const auto& [v, e] : t.powers)
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
  }
  if (vars.size() > 2)
    throw ParseError("more than 2 distinct variables", 0);

  char xvar = vars.empty() ? 'x' : vars[0];
  char yvar = 0;
  if (vars.size() == 1 && vars[0] == 'y') {
    xvar = 'x';
    yvar = 'y';
  } else if (vars.size() == 2) {
    if (vars[0] == 'y') {
      xvar = vars[1];
      yvar = 'y';
    } else if (vars[1] == 'y') {
      yvar = 'y';
    } else {
      throw ParseError("bivariate input must use y as one of its variables", 0);
    }
  }
  if (integer) return ParsedPoly(assemble<BigInt>(terms, xvar, yvar));
  return ParsedPoly(assemble<Complex>(terms, xvar, yvar));
}

Complex parse_complex_literal(std::string_view text) {
  Parser parser(text, "");
  return parser.parse_single_literal();
}

Rational parse_rational_literal(std::string_view text) {
  const auto slash = text.find('/');
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return std::string(s);
  };
  try {
    if (slash == std::string_view::npos) return Rational(BigInt(trim(text)));
    const BigInt num(trim(text.substr(0, slash)));
    const BigInt den(trim(text.substr(slash + 1)));
    if (den == 0) throw InputError("rational literal with zero denominator");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw InputError("malformed rational literal '" + std::string(text) + "'");
  }
}

std::string format_scalar(const BigInt& v) { return v.str(); }

std::string format_scalar(const Rational& v) {
  std::ostringstream os;
  os << numerator(v);
  if (denominator(v) != 1) os << "/" << denominator(v);
  return os.str();
}

std::string format_scalar(const Complex& v) {
  std::string s = "(" + format_double(v.real());
  const double im = v.imag();
  if (std::signbit(im)) s += "-" + format_double(-im);
  else s += "+" + format_double(im);
  return s + "i)";
}

std::string to_string(const IntPoly& p, char var) {
  std::string out;
  for (int k = p.degree(); k >= 0; --k) append_int_term(out, p[k], term_power<BigInt>(var, k));
  return out.empty() ? "0" : out;
}

std::string to_string(const ComplexPoly& p, char var) {
  std::string out;
  for (int k = p.degree(); k >= 0; --k)
    append_complex_term(out, p[k], term_power<Complex>(var, k));
  return out.empty() ? "(0+0i)" : out;
}

namespace {
std::string bivar_mono(int i, int j) {
  std::string x = term_power<BigInt>('x', i), y = term_power<BigInt>('y', j);
  if (x.empty()) return y;
  if (y.empty()) return x;
  return x + "*" + y;
}
}  // namespace

std::string to_string(const IntBivarPoly& p) {
  std::string out;
  for (int i = p.degx(); i >= 0; --i)
    for (int j = p.degy(); j >= 0; --j) append_int_term(out, p(i, j), bivar_mono(i, j));
  return out.empty() ? "0" : out;
}

std::string to_string(const ComplexBivarPoly& p) {
  std::string out;
  for (int i = p.degx(); i >= 0; --i)
    for (int j = p.degy(); j >= 0; --j)
      append_complex_term(out, p(i, j), bivar_mono(i, j));
  return out.empty() ? "(0+0i)" : out;
}

}  // namespace dynmahler
