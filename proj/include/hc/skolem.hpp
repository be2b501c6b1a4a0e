// =============================================================================
// skolem.hpp
//
// Skolem-symbol registry, Skolemized forms, ground instances, term sets and
// hull construction, and the bundled theory presets.
//
// A Skolem symbol is owned by the existential formula it eliminates.  The
// registry keys symbols by the alpha-canonical form of that existential
// (normalize.hpp), so two existentials that differ only in variable names
// share one symbol.  Symbols are handed out in first-encounter order during
// Skolemization, walking each formula in pre-order.
// =============================================================================
#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hc/arena.hpp"

namespace hc {

struct SkolemEntry {
    FormulaId key;       // alpha-canonical existential owning the symbol
    FormulaId display;   // the existential as first encountered, for printing
    std::uint32_t arity; // its free-slot count
    SkolemId symbol;
    mpz_class body_code; // code of the key's body; hull admission threshold
};

class SkolemRegistry {
  public:
    explicit SkolemRegistry(Arena& a) : arena_(&a) {}

    // Symbol for an existential subformula (Exists node, in RNNF).  Registers
    // a fresh symbol on first encounter.  free_order receives the formula's
    // free variables in slot order; the symbol is applied to them.
    SkolemId symbol_for(FormulaId exists_formula, std::vector<VarId>& free_order);

    const std::vector<SkolemEntry>& entries() const { return entries_; }
    // entry owning a symbol; null when the symbol was declared elsewhere
    const SkolemEntry* find_entry(SkolemId s) const;
    const SkolemEntry& entry(SkolemId s) const;
    std::size_t size() const { return entries_.size(); }

    Arena& arena() const { return *arena_; }

  private:
    Arena* arena_;
    std::vector<SkolemEntry> entries_;
    std::unordered_map<FormulaId, SkolemId> by_key_;
};

struct SkolemizedFormula {
    FormulaId rnnf;    // normalized input
    FormulaId with_s;  // existentials replaced by Skolem applications
    FormulaId open;    // universal quantifiers stripped from with_s
    std::vector<VarId> free_vars;  // free variables of open, binder order
};

// full pipeline: rnnf -> replace existentials -> strip universals
// requires a closed input formula
SkolemizedFormula skolemize(Arena& a, FormulaId f, SkolemRegistry& reg);

// Simultaneous substitution of ground terms for every free variable of an
// open formula.  Throws DomainError when a variable is missing from the map
// or a replacement is not ground.
FormulaId instance(Arena& a, FormulaId open,
                   const std::unordered_map<VarId, TermId>& subst);

// ── term sets ────────────────────────────────────────────────────────────────

struct TermSet {
    std::vector<TermId> terms;  // canonical code order, no duplicates
    std::vector<bool> member;   // membership bitmap indexed by TermId
    std::string provenance;     // "user" or "hull level k"

    bool contains(TermId t) const { return t < member.size() && member[t]; }
    std::size_t size() const { return terms.size(); }
};

// sorts, deduplicates, and checks groundness
TermSet make_term_set(const Arena& a, std::vector<TermId> terms,
                      std::string provenance);

// ── theories ─────────────────────────────────────────────────────────────────

struct TheoryAxiom {
    FormulaId source;     // the closed axiom as written
    SkolemizedFormula sk; // cached Skolemization against the shared registry
};

struct Theory {
    std::string name;
    std::vector<TheoryAxiom> axioms;
};

Theory make_theory(Arena& a, SkolemRegistry& reg, std::string name,
                   const std::vector<FormulaId>& axioms);

// preset names: EX2, EX3, T1, IND_SQ, OMEGA0, EX3_PLUS
Theory preset(Arena& a, SkolemRegistry& reg, const std::string& name);

// Skolem symbols occurring in the theory's open forms
std::vector<SkolemId> theory_symbols(const Arena& a, const Theory& t);

// largest body code over those symbols; admitting up to this bound keeps
// every symbol of the theory available at each hull level
mpz_class theory_code_bound(const SkolemRegistry& reg, const Theory& t);

// ── ground instances ─────────────────────────────────────────────────────────

struct GroundInstance {
    std::size_t axiom;          // index into Theory::axioms
    std::vector<TermId> args;   // substituted values, free_vars order
    FormulaId formula;          // the resulting ground open formula
};

// All instances of the theory's axioms with substitutions drawn from lambda
// such that every atom-level term of the instance is a member of lambda.
// Order: by axiom index, then by substitution tuple in lambda's code order.
std::vector<GroundInstance> available_instances(Arena& a, const Theory& t,
                                                const TermSet& lambda);

// maximal terms of the formula's atoms, left to right, duplicates removed
std::vector<TermId> atom_terms(const Arena& a, FormulaId f);

// ── Skolem hulls ─────────────────────────────────────────────────────────────

// One closure step: adds every base-language application over lambda plus
// every application of a registered Skolem symbol whose body code is <= j.
// When restrict_symbols is given, only those symbols are considered (their
// code bound still applies).
TermSet hull_step(Arena& a, const TermSet& lambda, const mpz_class& j,
                  const SkolemRegistry& reg,
                  const std::optional<std::vector<SkolemId>>& restrict_symbols,
                  std::string provenance);

// iterated: level k hull of base, using the theory's symbols and code bound
TermSet theory_hull(Arena& a, const TermSet& base, unsigned level,
                    const SkolemRegistry& reg, const Theory& t);

}  // namespace hc
