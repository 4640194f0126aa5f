#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "t3/stl/ast.hpp"

namespace t3::stl {

struct ParseError : std::runtime_error {
    int line;
    int column;
    std::vector<std::string> expected;

    ParseError(std::string msg, int line_, int col_, std::vector<std::string> exp)
        : std::runtime_error(std::move(msg)), line(line_), column(col_), expected(std::move(exp)) {}
};

// Grammar:
//   formula  := iff
//   iff      := implies ("<->" implies)*
//   implies  := or_ ("->" or_)*
//   or_      := and_ ("or" and_)*
//   and_     := term ("and" term)*
//   term     := "not" term
//             | ("F"|"G") interval? "(" formula ")"
//             | "in" "(" IDENT ")" | "holds" "(" IDENT ")"
//             | "(" formula ")"                      -- grouping
//             | "(" formula "U" interval? formula ")" -- until
//   interval := "[" NUMBER "," (NUMBER | "inf") "]"
// A missing interval means [0, inf]. All binary operators are
// left-associative. Throws ParseError with 1-based line/column.
FormulaPtr parse_stl(const std::string& text);

}  // namespace t3::stl
