#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "symflat/form.hpp"

namespace symflat {

/// Syntax or semantic error in form-DSL input, with a 1-based position.
class ParseError : public std::runtime_error {
public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

/// Parses a homogeneous form on a chart of dimension n.
///
///   form    := term (("+" | "-") term)*
///   term    := product ("/\" product)*
///   product := unary ("*" unary)*
///   unary   := ("+" | "-") unary | power
///   power   := primary ("^" INT)?
///   primary := INT ("/" INT)? | "x"INT | "y"INT | "dx"INT | "dy"INT | "(" form ")"
///
/// `*` multiplies when at least one side is a function; `/\` is the wedge;
/// `^` takes non-negative integer powers of functions. A sum whose nonzero
/// parts have different degrees is rejected. When the value is zero its
/// degree is `expected_degree` if given, else the degree the expression
/// carries (0 for a bare "0").
Form parse_form(std::string_view src, int n, std::optional<int> expected_degree = std::nullopt);

/// Parses a function (degree-0 form) and returns its coefficient.
Poly parse_poly(std::string_view src, int n);

} // namespace symflat
