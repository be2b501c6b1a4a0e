// Canonical text rendering of terms and formulas.  The printer and the parser
// in parse.hpp agree on one concrete syntax; parse(print(x)) == x for every
// AST, which the round-trip property tests pin down.
#pragma once

#include <string>

#include "hc/arena.hpp"

namespace hc {

std::string term_text(const Arena& a, TermId t);
std::string formula_text(const Arena& a, FormulaId f);

}  // namespace hc
