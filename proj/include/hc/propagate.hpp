// =============================================================================
// propagate.hpp
//
// Ground constraint propagation: the reasoning pre-pass behind refutation.
//
// The engine tracks, for every ordered pair of tracked terms, which of the
// three relations {same class, strictly below, strictly above} are still
// possible, starting from "all three" and narrowing by unit propagation over
// the constraint formulas.  Narrowing to "same class" merges the two terms,
// which cascades through congruence: whenever t and s are identified, any
// tracked term containing t as a subterm is identified with the variants that
// replace some of those occurrences by s, provided the variant is a member of
// lambda.  Strict orderings feed a cycle check.  Every derived fact records
// the constraints it came from, so a contradiction yields a small core of
// instances that is then greedily minimized.
//
// The engine is refutation-complete only in combination with the search
// layer; on its own it is sound: a reported conflict means no evaluation on
// lambda satisfies all constraints.
// =============================================================================
#pragma once

#include <cstddef>
#include <vector>

#include "hc/arena.hpp"
#include "hc/skolem.hpp"

namespace hc {

struct PropagationOutcome {
    bool conflict = false;
    std::vector<std::size_t> core;  // indices into the constraint vector
};

// Runs propagation to fixpoint over ground open constraint formulas whose
// atom terms are members of lambda.  When minimize_core is set and a conflict
// is found, the core is shrunk by re-running on subsets.
PropagationOutcome propagate_root(Arena& a, const TermSet& lambda,
                                  const std::vector<FormulaId>& constraints,
                                  bool minimize_core = true);

}  // namespace hc
