// Recursive-descent parser for the concrete syntax, plus loaders for the
// line-oriented theory (.thy) and term-set (.lam) file formats.
//
// Grammar (lowest binding first):
//   formula  := implies
//   implies  := or ('->' implies)?
//   or       := and ('|' and)*
//   and      := unary ('&' unary)*
//   unary    := '!' unary | primary
//   primary  := '(' formula ')'
//             | ('forall'|'exists') IDENT ['<=' term] formula
//             | term ('='|'<='|'!=') term
//   term     := product ('+' product)*
//   product  := factor ('*' factor)*
//   factor   := '0' | 'S' '(' term ')' | '$' NUM ['(' term {',' term} ')']
//             | IDENT | '(' term ')'
//
// `S`, `forall` and `exists` are reserved words.  `$k` refers to Skolem
// symbol k and is only valid once that symbol has been declared.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hc/arena.hpp"

namespace hc {

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t line, std::size_t col)
        : std::runtime_error(msg + " (line " + std::to_string(line) +
                             ", column " + std::to_string(col) + ")"),
          line(line),
          col(col) {}
    std::size_t line;
    std::size_t col;
};

FormulaId parse_formula(Arena& a, std::string_view text);
TermId parse_term(Arena& a, std::string_view text);

// One formula per line; '#' starts a comment; blank lines are skipped.
std::vector<FormulaId> parse_theory_text(Arena& a, std::string_view text);
// One ground term per line, same comment rules.
std::vector<TermId> parse_term_list_text(Arena& a, std::string_view text);

}  // namespace hc
