// =============================================================================
// arena.hpp
//
// Interned DAG storage for terms and formulas over the arithmetic signature
// {0, S, +, *, <=, =} extended with Skolem function symbols.
//
// Design notes:
//  * Every term and formula is a small immutable node held in one Arena.
//    Construction interns structurally equal nodes, so TermId/FormulaId
//    equality is structural equality and sets of terms are sets of ids.
//  * Nodes never change after creation; an Arena may be read from many
//    threads as long as nobody is inserting concurrently.
//  * Skolem symbols are declared here (id + arity) so that application
//    nodes can be arity-checked at construction; what a symbol *means* is
//    the business of SkolemRegistry (skolem.hpp).
//  * Each node caches the digit length of its Goedel code (see coding.hpp);
//    this makes the canonical code ordering of terms cheap.
// =============================================================================
#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hc {

using TermId    = std::uint32_t;
using FormulaId = std::uint32_t;
using VarId     = std::uint32_t;
using SkolemId  = std::uint32_t;

inline constexpr std::uint32_t k_invalid = 0xFFFFFFFFu;

// ── Node kinds ───────────────────────────────────────────────────────────────

enum class TermKind : std::uint8_t { Var, Zero, Succ, Add, Mul, Skolem };

enum class FormulaKind : std::uint8_t {
    Eq, Le,                       // atoms over two terms
    Not, And, Or, Implies,        // connectives
    Forall, Exists,               // quantifiers
    BoundedForall, BoundedExists  // "forall x <= t", "exists x <= t" sugar
};

struct TermNode {
    TermKind      kind;
    bool          ground;      // no Var below this node
    std::uint32_t symbol;      // VarId for Var, SkolemId for Skolem, else 0
    std::uint32_t arity;       // number of arguments
    std::uint32_t args_begin;  // slice into Arena's argument pool
    std::uint64_t code_len;    // digit length of the Goedel code
};

struct FormulaNode {
    FormulaKind   kind;
    VarId         var;    // bound variable for quantifiers, else k_invalid
    TermId        t0;     // atom lhs / bound term of bounded quantifiers
    TermId        t1;     // atom rhs
    FormulaId     f0;     // first child
    FormulaId     f1;     // second child
    std::uint64_t code_len;
};

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ── Arena ────────────────────────────────────────────────────────────────────

class Arena {
  public:
    Arena() = default;
    Arena(const Arena&) = delete;
    Arena& operator=(const Arena&) = delete;

    // variables
    VarId var_id(std::string_view name);             // interning lookup/insert
    const std::string& var_name(VarId v) const { return var_names_.at(v); }
    std::size_t var_count() const { return var_names_.size(); }

    // Skolem symbol declarations
    SkolemId declare_skolem(std::uint32_t arity);
    std::uint32_t skolem_arity(SkolemId s) const { return skolem_arities_.at(s); }
    std::size_t skolem_count() const { return skolem_arities_.size(); }

    // term constructors
    TermId var(VarId v);
    TermId var(std::string_view name) { return var(var_id(name)); }
    TermId zero();
    TermId succ(TermId t);
    TermId add(TermId l, TermId r);
    TermId mul(TermId l, TermId r);
    TermId skolem(SkolemId s, std::span<const TermId> args);
    TermId numeral(std::uint64_t n);  // n-fold S over 0

    // non-creating lookup: id of f(args) if that node already exists
    TermId find_term(TermKind kind, std::uint32_t symbol,
                     std::span<const TermId> args) const;

    // formula constructors
    FormulaId eq(TermId l, TermId r);
    FormulaId le(TermId l, TermId r);
    FormulaId not_(FormulaId f);
    FormulaId and_(FormulaId l, FormulaId r);
    FormulaId or_(FormulaId l, FormulaId r);
    FormulaId implies(FormulaId l, FormulaId r);
    FormulaId forall(VarId v, FormulaId body);
    FormulaId exists(VarId v, FormulaId body);
    FormulaId bounded_forall(VarId v, TermId bound, FormulaId body);
    FormulaId bounded_exists(VarId v, TermId bound, FormulaId body);

    // accessors
    const TermNode& term(TermId t) const { return terms_.at(t); }
    const FormulaNode& formula(FormulaId f) const { return formulas_.at(f); }
    std::span<const TermId> args(TermId t) const;
    std::size_t term_count() const { return terms_.size(); }
    std::size_t formula_count() const { return formulas_.size(); }

    bool ground(TermId t) const { return term(t).ground; }
    bool is_atom(FormulaId f) const {
        auto k = formula(f).kind;
        return k == FormulaKind::Eq || k == FormulaKind::Le;
    }

    // structural utilities
    std::size_t term_tree_size(TermId t) const;  // nodes counted as a tree
    bool contains_subterm(TermId haystack, TermId needle) const;
    void collect_subterms(TermId t, std::vector<TermId>& out) const;  // incl. t

    // free variables in first-occurrence (pre-order) order, duplicates removed
    std::vector<VarId> free_vars(FormulaId f) const;
    std::vector<VarId> term_vars(TermId t) const;

    // capture-naive simultaneous substitution; callers pass rectified input
    TermId subst_term(TermId t, const std::unordered_map<VarId, TermId>& sigma);
    FormulaId subst_formula(FormulaId f,
                            const std::unordered_map<VarId, TermId>& sigma);

  private:
    struct TermKey {
        TermKind kind;
        std::uint32_t symbol;
        std::vector<TermId> args;
        bool operator==(const TermKey&) const = default;
    };
    struct TermKeyHash {
        std::size_t operator()(const TermKey& k) const;
    };
    struct FormulaKey {
        FormulaKind kind;
        VarId var;
        TermId t0, t1;
        FormulaId f0, f1;
        bool operator==(const FormulaKey&) const = default;
    };
    struct FormulaKeyHash {
        std::size_t operator()(const FormulaKey& k) const;
    };

    TermId intern_term(TermKind kind, std::uint32_t symbol,
                       std::span<const TermId> args);
    FormulaId intern_formula(FormulaKind kind, VarId var, TermId t0, TermId t1,
                             FormulaId f0, FormulaId f1);

    std::vector<TermNode> terms_;
    std::vector<TermId> arg_pool_;
    std::vector<FormulaNode> formulas_;
    std::vector<std::string> var_names_;
    std::vector<std::uint32_t> skolem_arities_;
    std::unordered_map<std::string, VarId> var_index_;
    std::unordered_map<TermKey, TermId, TermKeyHash> term_index_;
    std::unordered_map<FormulaKey, FormulaId, FormulaKeyHash> formula_index_;
};

// Lexicographic comparison of Goedel codes without materializing them:
// code values order first by digit length, then by the digit strings, and the
// digit strings of distinct nodes are never prefixes of one another.
int term_code_cmp(const Arena& a, TermId x, TermId y);
inline bool term_code_less(const Arena& a, TermId x, TermId y) {
    return term_code_cmp(a, x, y) < 0;
}

}  // namespace hc
