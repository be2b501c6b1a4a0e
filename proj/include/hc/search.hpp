// =============================================================================
// search.hpp
//
// Witness search and refutation over a fixed term set, plus the hull-climbing
// refutation loop.
//
// find_evaluation decides whether the theory's available instances (and any
// injected ground constraints) admit an evaluation on lambda.  Two strategies
// share one canonical answer: `Brute` filters the full pre-evaluation stream,
// `Propagate` runs a pruned depth-first search over the same order after a
// propagation pre-pass; both report the lexicographically first witness, so
// outcomes are identical whenever both finish.  All searches are
// deterministic, including under --jobs style parallelism: work is split by
// the first term choice with fixed per-branch node quotas, and the published
// outcome and statistics are those of the sequential scan.
// =============================================================================
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hc/arena.hpp"
#include "hc/evaluation.hpp"
#include "hc/skolem.hpp"

namespace hc {

enum class Strategy { Brute, Propagate };

struct SearchOptions {
    Strategy strategy = Strategy::Propagate;
    // decision nodes (term placements for Propagate, sequences for Brute)
    std::uint64_t max_nodes = 50'000'000;
    unsigned jobs = 1;
    // witness search is skipped on larger domains; propagation still runs, so
    // refutations are found at any scale but the result may be inconclusive
    std::size_t dfs_domain_cap = 5000;
};

struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t leaves = 0;
    std::uint64_t instance_count = 0;
    unsigned level = 0;  // hull level, filled by herbrand_refute
};

struct InconsistencyCertificate {
    std::string method;  // "propagation" or "exhaustive"
    std::vector<GroundInstance> instances;  // everything available on lambda
    std::vector<std::size_t> core;  // indices (instances, then extras) that clash
    std::vector<FormulaId> core_formulas;
    // atom terms of the core formulas plus their subterms, restricted to
    // lambda; small enough to re-verify exhaustively
    std::vector<TermId> core_terms;
    std::string lambda_provenance;
    std::size_t lambda_size = 0;
};

struct SearchOutcome {
    enum class Kind { Witness, Inconsistent, BudgetExhausted };
    Kind kind;
    std::optional<Evaluation> witness;  // canonical first witness
    std::optional<InconsistencyCertificate> certificate;
    SearchStats stats;
};

// Decides T-evaluability of lambda.  extra_constraints are ground open
// formulas whose atom terms must be members of lambda; they are conjoined
// with the available instances.
SearchOutcome find_evaluation(Arena& a, const Theory& t, const TermSet& lambda,
                              const SearchOptions& opt = {},
                              const std::vector<FormulaId>& extra_constraints = {});

// Visits every T-evaluation of lambda in canonical order (sequentially, no
// budget); the visitor returns false to stop.  Returns the number visited.
std::uint64_t find_all(Arena& a, const Theory& t, const TermSet& lambda,
                       Strategy strategy,
                       const std::function<bool(const Evaluation&)>& visit,
                       const std::vector<FormulaId>& extra_constraints = {});

// ── universal statements ─────────────────────────────────────────────────────

struct UniversalCheck {
    enum class Verdict { Proved, Refuted, Unknown } verdict;
    SearchOutcome outcome;  // refutation certificate or counterexample witness
};

// Herbrand proof of "psi holds at t": psi must have exactly one free
// variable and t must be a member of lambda.  Proved when the theory plus
// the normalized negation of psi(t) admits no evaluation on lambda.
UniversalCheck check_universal(Arena& a, const Theory& t, FormulaId psi,
                               TermId point, const TermSet& lambda,
                               const SearchOptions& opt = {});

// ── refutation loop ──────────────────────────────────────────────────────────

struct RefutationResult {
    SearchOutcome outcome;   // first Inconsistent, else budget with last witness
    unsigned levels_tried = 0;
    std::vector<std::size_t> lambda_sizes;  // per level
};

// Climbs theory-restricted hulls of base (levels 0..max_level) until some
// level has no T-evaluation.  Witness searches that exhaust their budget do
// not stop the climb; refutations found by propagation alone do.  A nonzero
// wall budget stops the climb before starting another level; results within
// a completed level stay deterministic either way.
RefutationResult herbrand_refute(Arena& a, const SkolemRegistry& reg,
                                 const Theory& t, const TermSet& base,
                                 unsigned max_level,
                                 const SearchOptions& opt = {},
                                 std::uint64_t wall_budget_ms = 0);

// Exhaustively confirms a certificate: no evaluation over its core terms
// satisfies all core formulas.  Cost grows factorially with the core size.
bool reverify_certificate(Arena& a, const InconsistencyCertificate& cert);

}  // namespace hc
