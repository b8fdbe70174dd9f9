#pragma once

#include <string>
#include <string_view>

#include "mprat/expr.hpp"

namespace mprat {

/// Parses the expression grammar
///
///   expr     := term (("+" | "-") term)*
///   term     := factor ("*" factor)*
///   factor   := rational | variable | "inv" "(" expr ")" | "(" expr ")" | "-" factor
///   variable := "X" partnum "_" idxnum ["'"]
///   rational := int ["/" posint]
///
/// Whitespace is insignificant. Unary minus on a literal folds into the
/// literal; `a - b` becomes Sum[a, -b] with -b built by Expr::negate.
/// Throws ParseError (with a 0-based column) or UnknownVariable.
Expr parse(std::string_view text, const Alphabet& alphabet);

/// Prints `e` so that parse(format(e)) == e.
std::string format(const Expr& e);

} // namespace mprat
