// =============================================================================
// coding.hpp
//
// Goedel coding of symbols, terms, formulas, term sets and evaluation
// sequences, plus the omega growth functions and the q-chain report.
//
// The code of an object is obtained by writing it as a string of base-64
// digits (all digit values lie in [2, 64), see code_digits.hpp) and reading
// the string "1 d1 d2 ... dn" as a natural number in base 64.  Two bounds
// hold by construction:
//
//   * concatenation:  code(a * b) <= 64 * code(a) * code(b)
//     (in fact code(a * b) = code(a) * 64^|b| + (code(b) - 64^|b|))
//   * length:         |a| <= log2(code(a)),  since code(a) >= 64^|a|
//
// Digit strings of terms and formulas are bracket-balanced and therefore
// prefix-free; decoding is unambiguous.
// =============================================================================
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "hc/arena.hpp"

namespace hc {

struct Code {
    mpz_class value;  // >= 64: sentinel digit 1 followed by >= 1 digits

    bool operator==(const Code&) const = default;
};

// number of digits following the sentinel
std::size_t code_length(const Code& c);

// the digit string itself, sentinel stripped
std::vector<std::uint8_t> code_digits(const Code& c);

// raw digit strings; every digit must lie in [2, 64)
Code encode_digits(const std::vector<std::uint8_t>& digits);

// digit-string concatenation: code of (digits of a) ++ (digits of b)
Code code_concat(const Code& a, const Code& b);

Code encode_term(const Arena& a, TermId t);
Code encode_formula(const Arena& a, FormulaId f);

// set coding is order-independent: members are sorted into code order first
Code encode_term_set(const Arena& a, std::vector<TermId> members);

// alternating sequence t0 sep t1 sep ... with seps[i] the separator between
// terms[i] and terms[i+1]; false = "same class", true = "strictly below"
Code encode_alternating(const Arena& a, const std::vector<TermId>& terms,
                        const std::vector<bool>& seps);

// inverses on term/formula codes; throw DomainError on malformed digits or
// on variable/Skolem ids unknown to the arena
TermId decode_term(Arena& a, const Code& c);
FormulaId decode_formula(Arena& a, const Code& c);

// omega growth hierarchy: omega_0(x) = x^2, omega_{k+1}(x) = 2^(omega_k(log2 x))
// with log2 truncating.  n <= 2; the guard throws DomainError when the result
// would exceed max_bits bits.
mpz_class omega(unsigned n, const mpz_class& x,
                std::uint64_t max_bits = std::uint64_t{1} << 26);

// chain q_0 = S(S(0)), q_{i+1} = q(q_i) for a registered unary Skolem symbol
std::vector<TermId> q_chain(Arena& a, SkolemId q, unsigned n);

// value of a ground term under the standard interpretation where every
// unary Skolem application q(t) squares its argument (the reading forced on
// the chain terms by the squaring axioms); other Skolem symbols are rejected
mpz_class squaring_value(const Arena& a, TermId t);

struct GrowthRow {
    unsigned i;
    std::uint64_t value_bits;  // bits of 2^(2^i), i.e. 2^i + 1
    std::uint64_t code_bits;   // bits of the Goedel code of q_i
};

struct GrowthReport {
    std::vector<GrowthRow> rows;
    double fitted_c;  // least c with code_bits <= c * (i + 1) over all rows
};

GrowthReport q_chain_report(Arena& a, SkolemId q, unsigned n);

}  // namespace hc
