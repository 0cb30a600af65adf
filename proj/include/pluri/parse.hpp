#pragma once

#include "pluri/real_expr.hpp"

#include <string_view>

namespace pluri {

// Grammar:
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | primary
//   primary := number | '(' expr ')' | sqrt(expr) | root(int, expr)
//            | floor(expr) | frac(expr)
// Numbers are integers or plain decimals; a/b is ordinary division. Radicands
// must reduce to a positive rational. Throws DomainError on malformed input.
RealExpr parse_expression(std::string_view text);

} // namespace pluri
