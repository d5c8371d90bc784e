#pragma once

// Textual mode expressions, e.g. "h(1) f(-2) e(-1) |0>" or "W3_3 W3".
//
//   sum    := ['+'|'-'] term { ('+'|'-') term }
//   term   := [rational ['*']] chain
//   chain  := item { item }        applied right to left, ends in a vector
//   item   := current '(' int ')' | vector [ '_' int ]
//   vector := '|0>' | 'W3' | 'W4' | 'W5' | 'omega' | '(' sum ')'
//
// current is one of h e f L Laff Lgam, with L = Laff and L(n) = omega_{n+1}.
// A subscripted vector X_n acts as the mode X_n.

#include <pfva/parafermion_lab.hpp>

#include <stdexcept>
#include <string_view>

namespace pfva {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t column, const std::string& message);
  /// 1-based column of the offending character.
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

State evaluate_expression(std::string_view text, const VertexAlgebra& va, const WVectors& w);

}  // namespace pfva
