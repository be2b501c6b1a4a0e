// =============================================================================
// search.cpp
//
// Witness search over a term set.
//
// Both strategies walk the same tree: position by position, the next term is
// drawn from the unused members in code order, and after each term the
// separator tries "joins the block" before "starts a lower block".  Leaves
// are verified exactly, so the first reported witness is the canonical least
// one regardless of strategy; Propagate additionally prunes subtrees that
// provably contain no evaluation (a congruence obligation became impossible,
// or some constraint is already false under every completion) and runs a
// propagation pre-pass that can refute without any search.
//
// Parallel runs split the tree at the first term choice.  Every branch has a
// fixed node quota carved out of the total budget, results are combined by
// scanning branches in canonical order, and work done past the deciding
// branch is discarded, so outcome and statistics never depend on the number
// of workers.
// =============================================================================
#include "hc/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <functional>
#include <limits>
#include <thread>
#include <unordered_map>
#include <utility>

#include "hc/normalize.hpp"
#include "hc/print.hpp"
#include "hc/propagate.hpp"

namespace hc {
namespace {

// ── constraint preparation ───────────────────────────────────────────────────

struct Problem {
    std::vector<GroundInstance> instances;
    std::vector<FormulaId> constraints;  // instance formulas, then extras
};

bool quantifier_free(const Arena& a, FormulaId f);

Problem prepare(Arena& a, const Theory& t, const TermSet& lambda,
                const std::vector<FormulaId>& extras) {
    Problem p;
    p.instances = available_instances(a, t, lambda);
    p.constraints.reserve(p.instances.size() + extras.size());
    for (const GroundInstance& gi : p.instances)
        p.constraints.push_back(gi.formula);
    for (FormulaId f : extras) {
        if (!quantifier_free(a, f))
            throw DomainError("extra constraints must be open formulas");
        for (TermId at : atom_terms(a, f)) {
            if (!a.ground(at))
                throw DomainError("constraint term '" + term_text(a, at) +
                                  "' is not ground");
            if (!lambda.contains(at))
                throw DomainError("constraint term '" + term_text(a, at) +
                                  "' is not a member of the term set");
        }
        p.constraints.push_back(f);
    }
    return p;
}

bool quantifier_free(const Arena& a, FormulaId f) {
    const FormulaNode n = a.formula(f);
    switch (n.kind) {
        case FormulaKind::Eq:
        case FormulaKind::Le:
            return true;
        case FormulaKind::Not:
            return quantifier_free(a, n.f0);
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Implies:
            return quantifier_free(a, n.f0) && quantifier_free(a, n.f1);
        default:
            return false;
    }
}

void collect_atoms(const Arena& a, FormulaId f, std::vector<FormulaId>& out) {
    const FormulaNode n = a.formula(f);
    switch (n.kind) {
        case FormulaKind::Eq:
        case FormulaKind::Le:
            if (std::find(out.begin(), out.end(), f) == out.end())
                out.push_back(f);
            return;
        case FormulaKind::Not:
            collect_atoms(a, n.f0, out);
            return;
        default:
            collect_atoms(a, n.f0, out);
            collect_atoms(a, n.f1, out);
            return;
    }
}

// relation possibility bits between two domain positions
constexpr unsigned p_eq = 1u;
constexpr unsigned p_lt = 2u;
constexpr unsigned p_gt = 4u;
constexpr unsigned p_all = p_eq | p_lt | p_gt;

// ── depth-first searcher ─────────────────────────────────────────────────────

class Searcher {
  public:
    Searcher(const Arena& a, const TermSet& lambda,
             const std::vector<FormulaId>& constraints, bool prune)
        : a_(a), lambda_(lambda), constraints_(constraints), prune_(prune),
          ctx_(a, lambda.terms), n_(lambda.terms.size()) {
        rank_of_.reserve(n_);
        for (std::uint32_t i = 0; i < n_; ++i)
            rank_of_.emplace(lambda.terms[i], i);
        atoms_.resize(constraints_.size());
        pairs_.resize(constraints_.size());
        by_rank_.resize(n_);
        for (std::size_t c = 0; c < constraints_.size(); ++c) {
            collect_atoms(a_, constraints_[c], atoms_[c]);
            std::vector<std::uint32_t> touched;
            for (FormulaId atom : atoms_[c]) {
                const FormulaNode nd = a_.formula(atom);
                std::uint32_t rx = rank_of_.at(nd.t0);
                std::uint32_t ry = rank_of_.at(nd.t1);
                touched.push_back(rx);
                touched.push_back(ry);
                if (rx != ry)
                    pairs_[c].emplace_back(std::min(rx, ry), std::max(rx, ry));
            }
            std::sort(touched.begin(), touched.end());
            touched.erase(std::unique(touched.begin(), touched.end()),
                          touched.end());
            for (std::uint32_t r : touched) by_rank_[r].push_back(c);
            std::sort(pairs_[c].begin(), pairs_[c].end());
            pairs_[c].erase(std::unique(pairs_[c].begin(), pairs_[c].end()),
                            pairs_[c].end());
        }
    }

    struct BranchOutcome {
        bool budget = false;
        bool aborted = false;
        bool stopped = false;  // the leaf visitor asked to stop
        std::uint64_t nodes = 0;
        std::uint64_t leaves = 0;
    };

    // explores the subtree whose first term has the given rank; visit is
    // called on exactly verified leaves in canonical order
    BranchOutcome run_branch(
        std::uint32_t first_rank, std::uint64_t quota,
        const std::atomic<std::size_t>* decided, std::size_t branch_index,
        const std::function<bool(const PreEvaluation&)>& visit) const;

    std::size_t domain_size() const { return n_; }

  private:
    struct Walker {
        std::vector<std::uint32_t> seq;       // ranks by position
        std::vector<bool> seps;               // separator after each position
        std::vector<bool> used;               // by rank
        std::vector<std::int32_t> blk;        // block index by rank, -1 free
        std::vector<std::vector<std::uint32_t>> blocks;
        std::int32_t open = -1;               // joinable block, -1 when closed
        std::vector<std::pair<std::uint32_t, std::uint32_t>> reqs;
        std::vector<std::vector<std::uint32_t>> pending;  // rank -> req ids
        std::vector<std::uint32_t> pend_trail;            // ranks, for undo
        std::uint64_t nodes = 0;
        std::uint64_t leaves = 0;
        std::uint64_t quota = 0;
        bool budget = false;
        bool aborted = false;
        bool stopped = false;
        const std::atomic<std::size_t>* decided = nullptr;
        std::size_t branch_index = 0;
        const std::function<bool(const PreEvaluation&)>* visit = nullptr;
    };

    bool tick(Walker& w) const {
        if (++w.nodes > w.quota) {
            w.budget = true;
            return false;
        }
        if (w.decided && (w.nodes & 0xFFFu) == 0 &&
            w.branch_index > w.decided->load(std::memory_order_relaxed)) {
            w.aborted = true;
            return false;
        }
        return true;
    }

    unsigned poss(const Walker& w, std::uint32_t x, std::uint32_t y) const {
        std::int32_t bx = w.blk[x], by = w.blk[y];
        if (bx >= 0 && by >= 0) {
            if (bx == by) return p_eq;
            return bx < by ? p_lt : p_gt;
        }
        // unplaced terms land in the open block or strictly below everything
        // placed so far
        if (bx >= 0) return bx == w.open ? (p_eq | p_lt) : p_lt;
        if (by >= 0) return by == w.open ? (p_eq | p_gt) : p_gt;
        return p_all;
    }

    // possibility bits for (x, y), honoring an override given for the
    // normalized pair (ox, oy)
    unsigned atom_bits(const Walker& w, std::uint32_t x, std::uint32_t y,
                       std::uint32_t ox, std::uint32_t oy, unsigned ob) const {
        std::uint32_t lo = std::min(x, y), hi = std::max(x, y);
        if (lo != ox || hi != oy) return poss(w, x, y);
        if (x == lo) return ob;
        unsigned fl = ob & p_eq;
        if (ob & p_lt) fl |= p_gt;
        if (ob & p_gt) fl |= p_lt;
        return fl;
    }

    // three-valued truth under the current prefix; the pair (ox, oy), when
    // valid, is overridden to exactly the bits in ob
    int eval3(const Walker& w, FormulaId f, std::uint32_t ox, std::uint32_t oy,
              unsigned ob) const {
        const FormulaNode n = a_.formula(f);
        switch (n.kind) {
            case FormulaKind::Eq: {
                if (n.t0 == n.t1) return 1;
                std::uint32_t x = rank_of_.at(n.t0), y = rank_of_.at(n.t1);
                unsigned bits = atom_bits(w, x, y, ox, oy, ob);
                if (!(bits & p_eq)) return -1;
                return bits == p_eq ? 1 : 0;
            }
            case FormulaKind::Le: {
                if (n.t0 == n.t1) return 1;
                std::uint32_t x = rank_of_.at(n.t0), y = rank_of_.at(n.t1);
                unsigned bits = atom_bits(w, x, y, ox, oy, ob);
                if (!(bits & p_gt)) return 1;
                return bits == p_gt ? -1 : 0;
            }
            case FormulaKind::Not:
                return -eval3(w, n.f0, ox, oy, ob);
            case FormulaKind::And: {
                int l = eval3(w, n.f0, ox, oy, ob);
                if (l == -1) return -1;
                return std::min(l, eval3(w, n.f1, ox, oy, ob));
            }
            case FormulaKind::Or: {
                int l = eval3(w, n.f0, ox, oy, ob);
                if (l == 1) return 1;
                return std::max(l, eval3(w, n.f1, ox, oy, ob));
            }
            default: {  // Implies; quantifiers cannot appear in constraints
                int l = eval3(w, n.f0, ox, oy, ob);
                if (l == -1) return 1;
                return std::max(-l, eval3(w, n.f1, ox, oy, ob));
            }
        }
    }

    // false when constraint c can no longer be satisfied by any completion
    bool constraint_open(const Walker& w, std::size_t c) const {
        if (eval3(w, constraints_[c], k_invalid, k_invalid, 0) == -1)
            return false;
        // a pair with several possible relations may falsify the constraint
        // under each of them separately
        for (auto [lo, hi] : pairs_[c]) {
            unsigned bits = poss(w, lo, hi);
            if (bits == p_eq || bits == p_lt || bits == p_gt) continue;
            bool all_false = true;
            for (unsigned r : {p_eq, p_lt, p_gt}) {
                if (!(bits & r)) continue;
                if (eval3(w, constraints_[c], lo, hi, r) != -1) {
                    all_false = false;
                    break;
                }
            }
            if (all_false) return false;
        }
        return true;
    }

    bool constraints_open_for(const Walker& w, std::uint32_t rank) const {
        for (std::size_t c : by_rank_[rank])
            if (!constraint_open(w, c)) return false;
        return true;
    }

    // same-block obligation (A, B); placements may satisfy, refute, or defer it
    bool note_requirement(Walker& w, std::uint32_t ra, std::uint32_t rb) const {
        bool pa = w.blk[ra] >= 0, pb = w.blk[rb] >= 0;
        if (pa && pb) return w.blk[ra] == w.blk[rb];
        if (pa || pb) {
            std::uint32_t placed = pa ? ra : rb;
            if (w.blk[placed] != w.open) return false;  // block already closed
        }
        auto id = static_cast<std::uint32_t>(w.reqs.size());
        w.reqs.emplace_back(ra, rb);
        w.pending[ra].push_back(id);
        w.pend_trail.push_back(ra);
        w.pending[rb].push_back(id);
        w.pend_trail.push_back(rb);
        return true;
    }

    bool place(Walker& w, std::size_t depth, std::uint32_t r) const {
        w.used[r] = true;
        w.seq[depth] = r;
        if (w.open < 0) {
            w.blocks.emplace_back();
            w.open = static_cast<std::int32_t>(w.blocks.size()) - 1;
        }
        auto& block = w.blocks[static_cast<std::size_t>(w.open)];
        block.push_back(r);
        w.blk[r] = w.open;
        if (!prune_) return true;

        // joining a block creates equalities whose one-variable contexts must
        // collapse as well
        TermId rt = lambda_.terms[r];
        for (std::size_t i = 0; i + 1 < block.size(); ++i) {
            TermId ut = lambda_.terms[block[i]];
            for (auto [A, B] : ctx_.contexts(ut, rt))
                if (!note_requirement(w, rank_of_.at(A), rank_of_.at(B)))
                    return false;
            for (auto [A, B] : ctx_.contexts(rt, ut))
                if (!note_requirement(w, rank_of_.at(A), rank_of_.at(B)))
                    return false;
        }
        // obligations waiting on this term
        for (std::uint32_t id : w.pending[r]) {
            auto [x, y] = w.reqs[id];
            std::uint32_t other = x == r ? y : x;
            if (w.blk[other] >= 0 && w.blk[other] != w.blk[r]) return false;
        }
        return constraints_open_for(w, r);
    }

    void unplace(Walker& w, std::uint32_t r, std::size_t reqs_mark,
                 std::size_t pend_mark) const {
        while (w.pend_trail.size() > pend_mark) {
            w.pending[w.pend_trail.back()].pop_back();
            w.pend_trail.pop_back();
        }
        w.reqs.resize(reqs_mark);
        auto& block = w.blocks[static_cast<std::size_t>(w.open)];
        block.pop_back();
        if (block.empty()) {
            w.blocks.pop_back();
            w.open = -1;
        }
        w.blk[r] = -1;
        w.used[r] = false;
    }

    // checks that the open block may close: no obligation keeps it waiting for
    // an unplaced term, and no constraint dies once its members rank strictly
    // above everything still unplaced
    bool may_close(const Walker& w) const {
        if (!prune_) return true;
        const auto& block = w.blocks[static_cast<std::size_t>(
            std::max(w.open, 0))];
        for (std::uint32_t m : block) {
            for (std::uint32_t id : w.pending[m]) {
                auto [x, y] = w.reqs[id];
                std::uint32_t other = x == m ? y : x;
                if (w.blk[other] < 0) return false;
            }
        }
        return true;
    }

    bool recheck_closed_block(const Walker& w,
                              const std::vector<std::uint32_t>& block) const {
        if (!prune_) return true;
        std::vector<std::size_t> cs;
        for (std::uint32_t m : block)
            cs.insert(cs.end(), by_rank_[m].begin(), by_rank_[m].end());
        std::sort(cs.begin(), cs.end());
        cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
        for (std::size_t c : cs)
            if (!constraint_open(w, c)) return false;
        return true;
    }

    bool leaf(Walker& w) const {
        ++w.leaves;
        PreEvaluation p;
        p.terms.reserve(n_);
        for (std::uint32_t r : w.seq) p.terms.push_back(lambda_.terms[r]);
        p.seps.assign(w.seps.begin(), w.seps.end());
        if (!is_evaluation(a_, p, ctx_)) return true;
        Evaluation e = make_evaluation(a_, p);
        for (FormulaId f : constraints_)
            if (!satisfies(a_, e, f)) return true;
        if (!(*w.visit)(p)) {
            w.stopped = true;
            return false;
        }
        return true;
    }

    // separator branching after the term at `depth` was placed: the block
    // stays open first, then closes
    bool after_place(Walker& w, std::size_t depth) const {
        if (depth + 1 == n_) return leaf(w);
        w.seps[depth] = false;
        bool keep_going = descend(w, depth + 1);
        if (keep_going && may_close(w)) {
            w.seps[depth] = true;
            std::int32_t was_open = w.open;
            w.open = -1;
            if (recheck_closed_block(
                    w, w.blocks[static_cast<std::size_t>(was_open)]))
                keep_going = descend(w, depth + 1);
            w.open = was_open;
        }
        return keep_going;
    }

    bool descend(Walker& w, std::size_t depth) const {
        for (std::uint32_t r = 0; r < n_; ++r) {
            if (w.used[r]) continue;
            if (!tick(w)) return false;
            std::size_t reqs_mark = w.reqs.size();
            std::size_t pend_mark = w.pend_trail.size();
            bool keep_going = true;
            if (place(w, depth, r)) keep_going = after_place(w, depth);
            unplace(w, r, reqs_mark, pend_mark);
            if (!keep_going) return false;
        }
        return true;
    }

    const Arena& a_;
    const TermSet& lambda_;
    const std::vector<FormulaId>& constraints_;
    bool prune_;
    ContextIndex ctx_;
    std::size_t n_;
    std::unordered_map<TermId, std::uint32_t> rank_of_;
    std::vector<std::vector<FormulaId>> atoms_;
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> pairs_;
    std::vector<std::vector<std::size_t>> by_rank_;
};

Searcher::BranchOutcome Searcher::run_branch(
    std::uint32_t first_rank, std::uint64_t quota,
    const std::atomic<std::size_t>* decided, std::size_t branch_index,
    const std::function<bool(const PreEvaluation&)>& visit) const {
    Walker w;
    w.seq.assign(n_, 0);
    w.seps.assign(n_ > 0 ? n_ - 1 : 0, false);
    w.used.assign(n_, false);
    w.blk.assign(n_, -1);
    w.pending.resize(n_);
    w.quota = quota;
    w.decided = decided;
    w.branch_index = branch_index;
    w.visit = &visit;

    if (tick(w)) {
        std::size_t reqs_mark = w.reqs.size();
        std::size_t pend_mark = w.pend_trail.size();
        if (place(w, 0, first_rank)) after_place(w, 0);
        unplace(w, first_rank, reqs_mark, pend_mark);
    }

    BranchOutcome out;
    out.budget = w.budget;
    out.aborted = w.aborted;
    out.stopped = w.stopped;
    out.nodes = w.nodes;
    out.leaves = w.leaves;
    return out;
}

// ── orchestration ────────────────────────────────────────────────────────────

std::vector<std::uint64_t> branch_quotas(std::uint64_t total, std::size_t n) {
    std::vector<std::uint64_t> q(n, total / n);
    for (std::size_t i = 0; i < n && i < total % n; ++i) ++q[i];
    return q;
}

struct TreeResult {
    enum class Kind { Witness, Exhausted, Budget } kind;
    std::optional<PreEvaluation> witness;
    std::uint64_t nodes = 0;
    std::uint64_t leaves = 0;
};

// runs every branch under its quota and combines them exactly as a sequential
// scan would, so the result is independent of the worker count
TreeResult search_tree(const Searcher& s, const SearchOptions& opt) {
    const std::size_t n = s.domain_size();
    auto quotas = branch_quotas(std::max<std::uint64_t>(opt.max_nodes, n), n);
    std::vector<Searcher::BranchOutcome> results(n);
    std::vector<std::optional<PreEvaluation>> found(n);
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> decided{std::numeric_limits<std::size_t>::max()};

    auto worker = [&] {
        for (std::size_t b = next.fetch_add(1); b < n; b = next.fetch_add(1)) {
            if (b > decided.load()) {
                results[b].aborted = true;
                continue;
            }
            auto visit = [&](const PreEvaluation& p) {
                found[b] = p;
                return false;
            };
            results[b] = s.run_branch(static_cast<std::uint32_t>(b), quotas[b],
                                      &decided, b, visit);
            if (found[b] || results[b].budget) {
                std::size_t cur = decided.load();
                while (b < cur && !decided.compare_exchange_weak(cur, b)) {
                }
            }
        }
    };

    unsigned jobs = std::max(1u, opt.jobs);
    jobs = static_cast<unsigned>(
        std::min<std::size_t>(jobs, n));
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs - 1);
        for (unsigned i = 1; i < jobs; ++i) pool.emplace_back(worker);
        worker();
        for (std::thread& th : pool) th.join();
    }

    TreeResult out;
    out.kind = TreeResult::Kind::Exhausted;
    for (std::size_t b = 0; b < n; ++b) {
        out.nodes += results[b].nodes;
        out.leaves += results[b].leaves;
        if (results[b].budget) {
            out.kind = TreeResult::Kind::Budget;
            break;
        }
        if (found[b]) {
            out.kind = TreeResult::Kind::Witness;
            out.witness = std::move(found[b]);
            break;
        }
    }
    return out;
}

std::vector<TermId> closed_atom_terms(const Arena& a, const TermSet& lambda,
                                      const std::vector<FormulaId>& formulas) {
    std::vector<TermId> all;
    for (FormulaId f : formulas)
        for (TermId t : atom_terms(a, f)) a.collect_subterms(t, all);
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    std::erase_if(all, [&](TermId t) { return !lambda.contains(t); });
    std::sort(all.begin(), all.end(),
              [&](TermId x, TermId y) { return term_code_less(a, x, y); });
    return all;
}

InconsistencyCertificate make_certificate(const Arena& a,
                                          const TermSet& lambda, Problem& p,
                                          std::string method,
                                          std::vector<std::size_t> core) {
    InconsistencyCertificate cert;
    cert.method = std::move(method);
    cert.core = std::move(core);
    std::sort(cert.core.begin(), cert.core.end());
    for (std::size_t idx : cert.core)
        cert.core_formulas.push_back(p.constraints[idx]);
    cert.core_terms = closed_atom_terms(a, lambda, cert.core_formulas);
    cert.instances = std::move(p.instances);
    cert.lambda_provenance = lambda.provenance;
    cert.lambda_size = lambda.size();
    return cert;
}

// drop-one shrinking of an exhaustively refuted constraint set; a constraint
// is dropped only when the remaining set provably still has no witness
std::vector<std::size_t> minimize_exhausted(const Arena& a,
                                            const TermSet& lambda,
                                            const std::vector<FormulaId>& all,
                                            const SearchOptions& opt) {
    std::vector<std::size_t> core(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) core[i] = i;
    if (all.size() > 256) return core;  // keep certificates tractable
    SearchOptions inner = opt;
    inner.jobs = 1;
    for (std::size_t i = 0; i < core.size();) {
        std::vector<std::size_t> trial = core;
        trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
        std::vector<FormulaId> subset;
        subset.reserve(trial.size());
        for (std::size_t idx : trial) subset.push_back(all[idx]);
        Searcher s(a, lambda, subset, true);
        TreeResult r = search_tree(s, inner);
        if (r.kind == TreeResult::Kind::Exhausted)
            core = std::move(trial);
        else
            ++i;
    }
    return core;
}

SearchOutcome singleton_outcome(Arena& a, const TermSet& lambda, Problem& p) {
    PreEvaluation pe;
    pe.terms = lambda.terms;
    Evaluation e = make_evaluation(a, pe);
    SearchOutcome out;
    out.stats.instance_count = p.instances.size();
    out.stats.nodes = 1;
    out.stats.leaves = 1;
    for (std::size_t c = 0; c < p.constraints.size(); ++c) {
        if (!satisfies(a, e, p.constraints[c])) {
            // the one candidate fails this constraint, which is a core by itself
            out.kind = SearchOutcome::Kind::Inconsistent;
            out.certificate =
                make_certificate(a, lambda, p, "exhaustive", {c});
            return out;
        }
    }
    out.kind = SearchOutcome::Kind::Witness;
    out.witness = std::move(e);
    return out;
}

}  // namespace

// ── public entry points ──────────────────────────────────────────────────────

SearchOutcome find_evaluation(Arena& a, const Theory& t, const TermSet& lambda,
                              const SearchOptions& opt,
                              const std::vector<FormulaId>& extra_constraints) {
    if (lambda.size() == 0) throw DomainError("term set is empty");
    Problem p = prepare(a, t, lambda, extra_constraints);

    if (opt.strategy == Strategy::Propagate) {
        PropagationOutcome prop = propagate_root(a, lambda, p.constraints);
        if (prop.conflict) {
            SearchOutcome out;
            out.kind = SearchOutcome::Kind::Inconsistent;
            out.stats.instance_count = p.instances.size();
            out.certificate = make_certificate(a, lambda, p, "propagation",
                                               std::move(prop.core));
            return out;
        }
    }

    if (lambda.size() == 1) return singleton_outcome(a, lambda, p);

    SearchOutcome out;
    out.stats.instance_count = p.instances.size();
    if (lambda.size() > opt.dfs_domain_cap) {
        // witness enumeration is pointless at this scale; propagation above
        // stays the only refutation route
        out.kind = SearchOutcome::Kind::BudgetExhausted;
        return out;
    }

    Searcher s(a, lambda, p.constraints, opt.strategy == Strategy::Propagate);
    TreeResult r = search_tree(s, opt);
    out.stats.nodes = r.nodes;
    out.stats.leaves = r.leaves;
    switch (r.kind) {
        case TreeResult::Kind::Witness:
            out.kind = SearchOutcome::Kind::Witness;
            out.witness = make_evaluation(a, *r.witness);
            break;
        case TreeResult::Kind::Budget:
            out.kind = SearchOutcome::Kind::BudgetExhausted;
            break;
        case TreeResult::Kind::Exhausted: {
            out.kind = SearchOutcome::Kind::Inconsistent;
            out.certificate = make_certificate(
                a, lambda, p, "exhaustive",
                minimize_exhausted(a, lambda, p.constraints, opt));
            break;
        }
    }
    return out;
}

std::uint64_t find_all(Arena& a, const Theory& t, const TermSet& lambda,
                       Strategy strategy,
                       const std::function<bool(const Evaluation&)>& visit,
                       const std::vector<FormulaId>& extra_constraints) {
    if (lambda.size() == 0) throw DomainError("term set is empty");
    Problem p = prepare(a, t, lambda, extra_constraints);
    std::uint64_t count = 0;
    if (lambda.size() == 1) {
        PreEvaluation pe;
        pe.terms = lambda.terms;
        Evaluation e = make_evaluation(a, pe);
        for (FormulaId f : p.constraints)
            if (!satisfies(a, e, f)) return 0;
        ++count;
        visit(e);
        return count;
    }
    Searcher s(a, lambda, p.constraints, strategy == Strategy::Propagate);
    for (std::uint32_t b = 0; b < lambda.size(); ++b) {
        auto forward = [&](const PreEvaluation& pe) {
            ++count;
            return visit(make_evaluation(a, pe));
        };
        auto r = s.run_branch(
            b, std::numeric_limits<std::uint64_t>::max(), nullptr, b, forward);
        if (r.stopped) break;
    }
    return count;
}

UniversalCheck check_universal(Arena& a, const Theory& t, FormulaId psi,
                               TermId point, const TermSet& lambda,
                               const SearchOptions& opt) {
    std::vector<VarId> free = a.free_vars(psi);
    if (free.size() != 1)
        throw DomainError("universal check needs exactly one free variable");
    if (!quantifier_free(a, psi))
        throw DomainError("universal check needs an open formula");
    if (!a.ground(point))
        throw DomainError("instantiation point must be ground");
    if (!lambda.contains(point))
        throw DomainError("term '" + term_text(a, point) +
                          "' is not a member of the term set");
    FormulaId instance = a.subst_formula(
        psi, std::unordered_map<VarId, TermId>{{free[0], point}});
    FormulaId negated = rnnf(a, a.not_(instance));

    UniversalCheck result{UniversalCheck::Verdict::Unknown,
                          find_evaluation(a, t, lambda, opt, {negated})};
    switch (result.outcome.kind) {
        case SearchOutcome::Kind::Inconsistent:
            result.verdict = UniversalCheck::Verdict::Proved;
            break;
        case SearchOutcome::Kind::Witness:
            result.verdict = UniversalCheck::Verdict::Refuted;
            break;
        default:
            break;
    }
    return result;
}

RefutationResult herbrand_refute(Arena& a, const SkolemRegistry& reg,
                                 const Theory& t, const TermSet& base,
                                 unsigned max_level, const SearchOptions& opt,
                                 std::uint64_t wall_budget_ms) {
    RefutationResult result;
    std::optional<Evaluation> last_witness;
    SearchStats last_stats;
    const auto start = std::chrono::steady_clock::now();
    for (unsigned level = 0; level <= max_level; ++level) {
        if (wall_budget_ms && level > 0) {
            auto spent = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - start)
                             .count();
            if (static_cast<std::uint64_t>(spent) >= wall_budget_ms) break;
        }
        TermSet lam =
            level == 0
                ? base
                : theory_hull(a, base, level, reg, t);
        result.lambda_sizes.push_back(lam.size());
        result.levels_tried = level + 1;
        SearchOutcome outcome = find_evaluation(a, t, lam, opt);
        outcome.stats.level = level;
        if (outcome.kind == SearchOutcome::Kind::Inconsistent) {
            result.outcome = std::move(outcome);
            return result;
        }
        if (outcome.kind == SearchOutcome::Kind::Witness)
            last_witness = std::move(outcome.witness);
        last_stats = outcome.stats;
    }
    result.outcome.kind = SearchOutcome::Kind::BudgetExhausted;
    result.outcome.witness = std::move(last_witness);
    result.outcome.stats = last_stats;
    return result;
}

bool reverify_certificate(Arena& a, const InconsistencyCertificate& cert) {
    if (cert.core_formulas.empty()) return false;
    TermSet lam = make_term_set(a, cert.core_terms, "certificate core");
    if (lam.size() == 0) return false;
    if (lam.size() == 1) {
        PreEvaluation pe;
        pe.terms = lam.terms;
        Evaluation e = make_evaluation(a, pe);
        for (FormulaId f : cert.core_formulas)
            if (!satisfies(a, e, f)) return true;
        return false;
    }
    if (lam.size() <= 8) {
        bool found = false;
        enumerate_pre_evaluations(a, lam, [&](const PreEvaluation& p) {
            if (!is_evaluation(a, p)) return true;
            Evaluation e = make_evaluation(a, p);
            for (FormulaId f : cert.core_formulas)
                if (!satisfies(a, e, f)) return true;
            found = true;
            return false;
        });
        return !found;
    }
    // too many terms for exhaustive confirmation; re-derive the conflict
    return propagate_root(a, lam, cert.core_formulas, false).conflict;
}

}  // namespace hc
