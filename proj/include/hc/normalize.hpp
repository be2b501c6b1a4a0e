#pragma once

#include <vector>

#include "hc/arena.hpp"

namespace hc {

// Rewrites bounded quantifiers into their unbounded readings:
//   exists v <= t (b)  =>  exists v (v <= t & b)
//   forall v <= t (b)  =>  forall v (v <= t -> b)
// No bounded nodes remain in the result.
FormulaId desugar_bounded(Arena& a, FormulaId f);

// Rectified negation normal form. Implications are expanded, negations are
// pushed down to the atoms, bounded quantifiers are desugared, and every
// quantified variable is renamed to a canonical name: v0, v1, ... assigned
// left to right over the quantifiers of the result, skipping any name that
// already occurs free in the input. Free variables are left untouched.
// Idempotent, and classically equivalent to the input.
FormulaId rnnf(Arena& a, FormulaId f);

// True iff f contains no implication and no bounded quantifier, negations
// sit directly above atoms, and the quantified variables are pairwise
// distinct and distinct from the free variables.
bool is_rnnf(const Arena& a, FormulaId f);

// Canonical key for alpha-equivalence: bound variables are renamed to a
// fixed scheme by binder order and free variables are replaced by numbered
// slot variables in first-occurrence order. Two formulas get the same key
// exactly when they differ only in variable names. When slot_order is given
// it receives the original free variables, one per slot, in slot order.
FormulaId alpha_key(Arena& a, FormulaId f,
                    std::vector<VarId>* slot_order = nullptr);

}  // namespace hc
