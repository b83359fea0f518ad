#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "dynmahler/bivar.hpp"
#include "dynmahler/poly.hpp"

namespace dynmahler {

/// Syntax error in polynomial text; position() is a 0-based byte offset.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : InputError(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Result of parse_poly. The integer variants are produced iff every literal
/// in the text is an integer; the bivariate variants iff two variables occur.
class ParsedPoly {
 public:
  using Variant = std::variant<IntPoly, ComplexPoly, IntBivarPoly, ComplexBivarPoly>;

  explicit ParsedPoly(Variant v) : value_(std::move(v)) {}

  const Variant& value() const { return value_; }
  bool is_integer() const {
    return std::holds_alternative<IntPoly>(value_) ||
           std::holds_alternative<IntBivarPoly>(value_);
  }
  bool is_bivariate() const {
    return std::holds_alternative<IntBivarPoly>(value_) ||
           std::holds_alternative<ComplexBivarPoly>(value_);
  }

  // Accessors throw InputError when the requested shape does not apply.
  IntPoly int_univariate() const;
  ComplexPoly complex_univariate() const;
  IntBivarPoly int_bivariate() const;          // univariate input lifts to x
  ComplexBivarPoly complex_bivariate() const;  // univariate input lifts to x

 private:
  Variant value_;
};

/// Parses the ASCII grammar
///   expr  := term (('+'|'-') term)*
///   term  := coeff ('*'? var ('^' uint)?)* | var ('^' uint)? ...
///   coeff := int | decimal | '(' decimal ('+'|'-') decimal 'i' ')'
/// Variables come from `allowed` (default x, y, z, w). One distinct variable
/// gives a univariate result whatever its name; two must be y and one other.
ParsedPoly parse_poly(std::string_view text, std::string_view allowed = "xyzw");

/// A single coefficient literal: int, decimal, or "(a+bi)"; a leading sign is
/// accepted. Used for CLI point arguments.
Complex parse_complex_literal(std::string_view text);

/// Exact rational literal "p" or "p/q".
Rational parse_rational_literal(std::string_view text);

// Text forms that parse_poly reads back to identical coefficients. Complex
// coefficients are always written in parenthesized form, doubles in shortest
// round-trip notation.
std::string format_scalar(const BigInt& v);
std::string format_scalar(const Rational& v);
std::string format_scalar(const Complex& v);

std::string to_string(const IntPoly& p, char var = 'x');
std::string to_string(const ComplexPoly& p, char var = 'x');
std::string to_string(const IntBivarPoly& p);
std::string to_string(const ComplexBivarPoly& p);

}  // namespace dynmahler
