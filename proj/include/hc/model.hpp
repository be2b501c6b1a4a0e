// =============================================================================
// model.hpp
//
// Finite partial structure read off an evaluation.
//
// The universe is the evaluation's classes in ascending order; the order
// relation is just the class order, so only function tables carry content.
// A table entry exists wherever the term set provides an application whose
// arguments are all members; entries are keyed by argument classes, and
// construction verifies that every choice of representatives yields the same
// value class, so the tables are well defined on classes.
// =============================================================================
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "hc/arena.hpp"
#include "hc/evaluation.hpp"
#include "hc/skolem.hpp"

namespace hc {

struct FunctionTable {
    TermKind kind;      // Zero, Succ, Add, Mul, or Skolem
    SkolemId symbol;    // meaningful for Skolem tables only
    std::map<std::vector<std::uint32_t>, std::uint32_t> entries;
};

struct FiniteHerbrandModel {
    std::vector<std::vector<TermId>> universe;  // classes, ascending
    std::vector<FunctionTable> tables;

    std::size_t classes() const { return universe.size(); }
    bool le(std::uint32_t i, std::uint32_t j) const { return i <= j; }
    const FunctionTable* table(TermKind kind, SkolemId symbol) const;
};

// Groups the members of lambda by head symbol into class-indexed tables.
// Throws DomainError when two representative choices disagree.
FiniteHerbrandModel extract_model(const Arena& a, const Evaluation& e,
                                  const TermSet& lambda);

// Value class of t, using the evaluation for members and the tables for
// everything else; nullopt when a needed entry is missing.
std::optional<std::uint32_t> model_value(const Arena& a,
                                         const FiniteHerbrandModel& m,
                                         const Evaluation& e, TermId t);

// Truth of an open ground formula whose atom terms all have values.
bool model_satisfies(const Arena& a, const FiniteHerbrandModel& m,
                     const Evaluation& e, FormulaId f);

}  // namespace hc
