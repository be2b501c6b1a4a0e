// =============================================================================
// evaluation.hpp
//
// Pre-evaluations and evaluations over a finite set of ground terms.
//
// A pre-evaluation arranges the n terms of its domain into a sequence
// t0 s1 t1 s2 ... t(n-1) where each separator is "same class" or "strictly
// below the next".  That induces an ordered partition into blocks; two terms
// relate by ~ when they share a block and by < when one's block comes first.
// An evaluation is a pre-evaluation whose ~ is a congruence with respect to
// every one-variable context realized inside the domain: whenever t ~ s and
// both u(t) and u(s) are domain members, u(t) ~ u(s) must hold.
// =============================================================================
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hc/arena.hpp"
#include "hc/skolem.hpp"

namespace hc {

struct PreEvaluation {
    std::vector<TermId> terms;  // distinct ground terms, sequence order
    std::vector<bool> seps;     // terms.size()-1 entries; true = strict rise
};

struct BlockStructure {
    std::vector<std::vector<TermId>> blocks;  // ascending class order
    std::unordered_map<TermId, std::uint32_t> block_of;
};

// throws DomainError on malformed input (duplicate or open terms, separator
// count mismatch, empty sequence)
void validate_pre_evaluation(const Arena& a, const PreEvaluation& p);

BlockStructure relations(const Arena& a, const PreEvaluation& p);

// ── one-variable contexts ────────────────────────────────────────────────────

// For every ordered pair of domain members (A, B) this index lists the hole
// pairs (t, s) such that A = u(t) and B = u(s) for a term u(x) over the
// domain; A is filed under each of its hole pairs.  The trivial context
// u(x) = x is omitted.
class ContextIndex {
  public:
    ContextIndex() = default;
    ContextIndex(const Arena& a, const std::vector<TermId>& domain);

    std::span<const std::pair<TermId, TermId>> contexts(TermId t,
                                                        TermId s) const;

  private:
    std::unordered_map<std::uint64_t,
                       std::vector<std::pair<TermId, TermId>>>
        buckets_;
};

// hole pairs (t, s) with A = u(t), B = u(s) for some context u; the leading
// entry is always (A, B) itself (the trivial context)
std::vector<std::pair<TermId, TermId>> hole_pairs(const Arena& a, TermId A,
                                                  TermId B);

// ── evaluations ──────────────────────────────────────────────────────────────

bool is_evaluation(const Arena& a, const PreEvaluation& p);
bool is_evaluation(const Arena& a, const PreEvaluation& p,
                   const ContextIndex& ctx);

class Evaluation {
  public:
    const PreEvaluation& sequence() const { return seq_; }
    const std::vector<std::vector<TermId>>& blocks() const {
        return rel_.blocks;
    }
    bool in_domain(TermId t) const { return rel_.block_of.count(t) != 0; }
    std::uint32_t block_of(TermId t) const;  // throws when t is not a member

    bool eq(TermId t, TermId s) const { return block_of(t) == block_of(s); }
    bool lt(TermId t, TermId s) const { return block_of(t) < block_of(s); }
    bool le(TermId t, TermId s) const { return block_of(t) <= block_of(s); }

  private:
    friend Evaluation make_evaluation(const Arena& a, PreEvaluation p);
    PreEvaluation seq_;
    BlockStructure rel_;
};

// packages a congruent pre-evaluation; throws DomainError otherwise
Evaluation make_evaluation(const Arena& a, PreEvaluation p);

// Truth of a ground open formula under the evaluation's relations: atoms read
// off ~ and the block order, connectives behave classically, and implication
// abbreviates the usual disjunction.  Atom arguments must be domain members;
// quantifiers are rejected.
bool satisfies(const Arena& a, const Evaluation& e, FormulaId f);

// satisfies() over every available instance of the theory on lambda, which
// must be the evaluation's domain
bool is_T_evaluation(Arena& a, const Evaluation& e, const Theory& t,
                     const TermSet& lambda);

// Visits every pre-evaluation of lambda in canonical order: sequences compare
// lexicographically with terms ranked by code order and "same class" before
// "strictly below".  Requires at least two members.  The visitor returns
// false to stop early; the call returns the number of sequences visited.
std::uint64_t enumerate_pre_evaluations(
    const Arena& a, const TermSet& lambda,
    const std::function<bool(const PreEvaluation&)>& visit);

// ── text form ────────────────────────────────────────────────────────────────

// "t0 ~ t1 < t2 ~ t3" with terms in the printer's syntax
std::string evaluation_text(const Arena& a, const PreEvaluation& p);
PreEvaluation evaluation_from_text(Arena& a, std::string_view text);

}  // namespace hc
