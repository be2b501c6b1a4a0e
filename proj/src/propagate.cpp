// =============================================================================
// propagate.cpp
//
// Ground constraint propagation over a term set.
//
// Elements are the atom-level terms of the constraints plus any lambda
// members reached by congruence rewriting.  For each unordered pair of
// element classes the engine keeps a three-bit possibility set: same class,
// first strictly below, first strictly above.  Storing the pair once gives
// antisymmetry for free: "x at or below y" and "y at or below x" intersect
// to "same class", which triggers a union-find merge.
//
// Merges cascade through congruence.  When t and s land in one class, every
// element A containing t spawns the variants that replace a nonempty subset
// of those occurrences by s; each variant that is itself a member of lambda
// is identified with A.  Variants must already exist in the arena (members
// of lambda always do), so rewriting uses the non-creating term lookup.
//
// Strict facts feed an ordering pass that detects cycles and propagates
// transitive consequences into existing pair entries.
//
// Every narrowing records an event with premise event ids and an optional
// constraint index; a conflict walks this graph to collect the constraints
// involved, and the driver shrinks that core by re-running on subsets.
// =============================================================================
#include "hc/propagate.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace hc {
namespace {

constexpr unsigned k_eq = 1u;  // same class
constexpr unsigned k_lt = 2u;  // first element strictly below second
constexpr unsigned k_gt = 4u;  // first element strictly above second
constexpr unsigned k_all = k_eq | k_lt | k_gt;

// congruence enumerates subsets of occurrences; above this many occurrences
// of the rewritten subterm only the all-occurrences variant is tried
constexpr unsigned k_occurrence_cap = 12;

// cap on member-list cross products enqueued per class merge
constexpr std::size_t k_cross_cap = 4096;

unsigned flip(unsigned bits) {
    unsigned out = bits & k_eq;
    if (bits & k_lt) out |= k_gt;
    if (bits & k_gt) out |= k_lt;
    return out;
}

class Engine {
  public:
    Engine(Arena& a, const TermSet& lambda,
           const std::vector<FormulaId>& constraints)
        : a_(a), lambda_(lambda), constraints_(constraints) {}

    PropagationOutcome run();

  private:
    struct Event {
        int instance;  // constraint index behind this step, -1 for none
        std::vector<std::uint32_t> premises;
    };
    struct PairFact {
        unsigned bits = k_all;
        std::vector<std::uint32_t> events;  // everything that narrowed it
    };
    struct MergeRequest {
        std::uint32_t x, y;  // element indices
        std::uint32_t cause;  // event id
    };
    struct CongruencePair {
        TermId t, s;
        std::uint32_t cause;
    };

    static std::uint64_t pack(std::uint32_t lo, std::uint32_t hi) {
        return (static_cast<std::uint64_t>(lo) << 32) | hi;
    }

    std::uint32_t element(TermId t);
    std::uint32_t find(std::uint32_t x);
    unsigned bits_between(std::uint32_t rx, std::uint32_t ry);
    void append_pair_events(std::uint32_t rx, std::uint32_t ry,
                            std::vector<std::uint32_t>& out);
    void append_root_events(std::uint32_t r, std::vector<std::uint32_t>& out);
    void fail(std::vector<std::uint32_t> premises, int instance);
    bool restrict_roots(std::uint32_t rx, std::uint32_t ry, unsigned allowed,
                        std::vector<std::uint32_t> premises, int instance);
    bool merge_roots(std::uint32_t x, std::uint32_t y, std::uint32_t cause);
    bool drain();
    bool rewrite_side(TermId t, TermId s, std::uint32_t cause);
    unsigned count_occurrences(TermId u, TermId from) const;
    TermId rewrite(TermId u, TermId from, TermId to, unsigned& counter,
                   unsigned mask, bool replace_all, bool& ok) const;
    int eval3(FormulaId f, FormulaId overridden, int value);
    void collect_atoms(FormulaId f, std::vector<FormulaId>& out);
    bool process_constraint(std::size_t c);
    bool ordering_pass();
    std::vector<std::size_t> conflict_core() const;

    Arena& a_;
    const TermSet& lambda_;
    const std::vector<FormulaId>& constraints_;

    std::vector<TermId> elems_;
    std::unordered_map<TermId, std::uint32_t> elem_idx_;
    std::vector<std::uint32_t> parent_;
    std::vector<std::vector<std::uint32_t>> members_;  // per live root
    std::vector<std::vector<std::uint32_t>> adj_;      // counterpart roots
    // per live root: events behind every merge that built the class; facts
    // keyed by a root implicitly rely on them, so they join new premises
    std::vector<std::vector<std::uint32_t>> root_causes_;
    std::unordered_map<std::uint64_t, PairFact> pairs_;
    std::unordered_map<TermId, std::vector<std::uint32_t>> occurs_;

    std::vector<Event> events_;
    std::deque<MergeRequest> merges_;
    std::deque<CongruencePair> rewrites_;

    std::vector<std::vector<FormulaId>> atoms_;  // per constraint, deduped
    std::vector<char> done_;

    bool changed_ = false;
    bool conflict_ = false;
    std::vector<std::uint32_t> conflict_premises_;
    int conflict_instance_ = -1;
};

std::uint32_t Engine::element(TermId t) {
    auto it = elem_idx_.find(t);
    if (it != elem_idx_.end()) return it->second;
    auto idx = static_cast<std::uint32_t>(elems_.size());
    elems_.push_back(t);
    elem_idx_.emplace(t, idx);
    parent_.push_back(idx);
    members_.push_back({idx});
    adj_.emplace_back();
    root_causes_.emplace_back();
    std::vector<TermId> subs;
    a_.collect_subterms(t, subs);
    std::sort(subs.begin(), subs.end());
    subs.erase(std::unique(subs.begin(), subs.end()), subs.end());
    for (TermId s : subs)
        if (s != t) occurs_[s].push_back(idx);
    return idx;
}

std::uint32_t Engine::find(std::uint32_t x) {
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
    }
    return x;
}

unsigned Engine::bits_between(std::uint32_t rx, std::uint32_t ry) {
    if (rx == ry) return k_eq;
    auto it = pairs_.find(pack(std::min(rx, ry), std::max(rx, ry)));
    unsigned bits = it == pairs_.end() ? k_all : it->second.bits;
    return rx < ry ? bits : flip(bits);
}

void Engine::append_pair_events(std::uint32_t rx, std::uint32_t ry,
                                std::vector<std::uint32_t>& out) {
    if (rx == ry) return;
    auto it = pairs_.find(pack(std::min(rx, ry), std::max(rx, ry)));
    if (it != pairs_.end())
        out.insert(out.end(), it->second.events.begin(), it->second.events.end());
}

void Engine::append_root_events(std::uint32_t r, std::vector<std::uint32_t>& out) {
    out.insert(out.end(), root_causes_[r].begin(), root_causes_[r].end());
}

void Engine::fail(std::vector<std::uint32_t> premises, int instance) {
    if (conflict_) return;
    conflict_ = true;
    conflict_premises_ = std::move(premises);
    conflict_instance_ = instance;
}

bool Engine::restrict_roots(std::uint32_t rx, std::uint32_t ry, unsigned allowed,
                            std::vector<std::uint32_t> premises, int instance) {
    if (rx == ry) {
        if (!(allowed & k_eq)) {
            append_root_events(rx, premises);
            fail(std::move(premises), instance);
            return false;
        }
        return true;
    }
    std::uint32_t lo = std::min(rx, ry), hi = std::max(rx, ry);
    if (rx > ry) allowed = flip(allowed);
    auto [it, fresh] = pairs_.try_emplace(pack(lo, hi));
    if (fresh) {
        adj_[lo].push_back(hi);
        adj_[hi].push_back(lo);
    }
    PairFact& fact = it->second;
    unsigned next = fact.bits & allowed;
    if (next == fact.bits) return true;
    append_root_events(rx, premises);
    append_root_events(ry, premises);
    auto id = static_cast<std::uint32_t>(events_.size());
    events_.push_back({instance, std::move(premises)});
    fact.bits = next;
    fact.events.push_back(id);
    changed_ = true;
    if (next == 0) {
        fail(fact.events, instance);
        return false;
    }
    if (next == k_eq) merges_.push_back({lo, hi, id});
    return true;
}

bool Engine::merge_roots(std::uint32_t x, std::uint32_t y, std::uint32_t cause) {
    std::uint32_t rx = find(x), ry = find(y);
    if (rx == ry) return true;

    std::uint32_t lo = std::min(rx, ry), hi = std::max(rx, ry);
    auto self = pairs_.find(pack(lo, hi));
    if (self != pairs_.end()) {
        if (!(self->second.bits & k_eq)) {
            std::vector<std::uint32_t> prem = self->second.events;
            prem.push_back(cause);
            append_root_events(lo, prem);
            append_root_events(hi, prem);
            fail(std::move(prem), -1);
            return false;
        }
        pairs_.erase(self);
        std::erase(adj_[lo], hi);
        std::erase(adj_[hi], lo);
    }

    // every cross pair of the two classes is newly equal; enqueue them for
    // congruence rewriting before the member lists are spliced
    const auto& ma = members_[rx];
    const auto& mb = members_[ry];
    if (ma.size() * mb.size() <= k_cross_cap) {
        for (std::uint32_t i : ma)
            for (std::uint32_t j : mb)
                rewrites_.push_back({elems_[i], elems_[j], cause});
    } else {
        for (std::uint32_t i : ma) rewrites_.push_back({elems_[i], elems_[ry], cause});
        for (std::uint32_t j : mb) rewrites_.push_back({elems_[rx], elems_[j], cause});
    }

    std::uint32_t nr = ma.size() >= mb.size() ? rx : ry;
    std::uint32_t dead = nr == rx ? ry : rx;
    parent_[dead] = nr;
    members_[nr].insert(members_[nr].end(), members_[dead].begin(),
                        members_[dead].end());
    members_[dead].clear();
    auto& causes = root_causes_[nr];
    causes.insert(causes.end(), root_causes_[dead].begin(),
                  root_causes_[dead].end());
    causes.push_back(cause);
    std::sort(causes.begin(), causes.end());
    causes.erase(std::unique(causes.begin(), causes.end()), causes.end());
    root_causes_[dead].clear();
    changed_ = true;

    // migrate the dead root's pair entries onto the surviving root
    std::vector<std::uint32_t> counterparts = std::move(adj_[dead]);
    adj_[dead].clear();
    for (std::uint32_t c : counterparts) {
        auto node = pairs_.extract(
            pack(std::min(dead, c), std::max(dead, c)));
        if (node.empty()) continue;
        std::erase(adj_[c], dead);
        unsigned toward_c = dead < c ? node.mapped().bits : flip(node.mapped().bits);
        std::uint32_t l2 = std::min(nr, c), h2 = std::max(nr, c);
        unsigned stored = nr < c ? toward_c : flip(toward_c);
        auto [dst, fresh] = pairs_.try_emplace(pack(l2, h2));
        if (fresh) {
            adj_[nr].push_back(c);
            adj_[c].push_back(nr);
            dst->second.bits = stored;
            dst->second.events = std::move(node.mapped().events);
        } else {
            unsigned merged = dst->second.bits & stored;
            dst->second.events.insert(dst->second.events.end(),
                                      node.mapped().events.begin(),
                                      node.mapped().events.end());
            if (merged != dst->second.bits) dst->second.bits = merged;
        }
        // the entry now speaks for the merged class, so the merge itself
        // becomes part of its ancestry
        dst->second.events.push_back(cause);
        PairFact& fact = pairs_.at(pack(l2, h2));
        if (fact.bits == 0) {
            std::vector<std::uint32_t> prem = fact.events;
            append_root_events(nr, prem);
            append_root_events(c, prem);
            fail(std::move(prem), -1);
            return false;
        }
        if (fact.bits == k_eq) {
            auto id = static_cast<std::uint32_t>(events_.size());
            events_.push_back({-1, fact.events});
            merges_.push_back({l2, h2, id});
        }
    }
    return true;
}

bool Engine::drain() {
    while (!conflict_ && (!merges_.empty() || !rewrites_.empty())) {
        if (!merges_.empty()) {
            MergeRequest m = merges_.front();
            merges_.pop_front();
            if (!merge_roots(m.x, m.y, m.cause)) return false;
        } else {
            CongruencePair p = rewrites_.front();
            rewrites_.pop_front();
            if (!rewrite_side(p.t, p.s, p.cause)) return false;
            if (!rewrite_side(p.s, p.t, p.cause)) return false;
        }
    }
    return !conflict_;
}

bool Engine::rewrite_side(TermId t, TermId s, std::uint32_t cause) {
    if (t == s) return true;
    auto it = occurs_.find(t);
    if (it == occurs_.end()) return true;
    // new elements registered below may extend occurs_[t]; their variants are
    // a subset of the ones enumerated here, so a snapshot is enough
    std::vector<std::uint32_t> hosts = it->second;
    for (std::uint32_t e : hosts) {
        TermId host = elems_[e];
        unsigned occ = count_occurrences(host, t);
        if (occ == 0) continue;
        bool capped = occ > k_occurrence_cap;
        unsigned full = capped ? 1u : (1u << occ) - 1u;
        for (unsigned mask = 1; mask <= full; ++mask) {
            bool ok = true;
            unsigned counter = 0;
            TermId variant = rewrite(host, t, s, counter, mask, capped, ok);
            if (!ok || variant == host) continue;
            if (!lambda_.contains(variant)) continue;
            std::uint32_t v = element(variant);
            if (find(e) == find(v)) continue;
            auto id = static_cast<std::uint32_t>(events_.size());
            events_.push_back({-1, {cause}});
            merges_.push_back({e, v, id});
        }
    }
    return true;
}

unsigned Engine::count_occurrences(TermId u, TermId from) const {
    if (u == from) return 1;
    const TermNode n = a_.term(u);
    unsigned total = 0;
    auto args = a_.args(u);
    for (std::uint32_t i = 0; i < n.arity; ++i)
        total += count_occurrences(args[i], from);
    return total;
}

TermId Engine::rewrite(TermId u, TermId from, TermId to, unsigned& counter,
                       unsigned mask, bool replace_all, bool& ok) const {
    if (u == from) {
        bool take = replace_all || ((mask >> counter) & 1u);
        ++counter;
        return take ? to : u;
    }
    const TermNode n = a_.term(u);
    if (n.arity == 0) return u;
    std::vector<TermId> args(a_.args(u).begin(), a_.args(u).end());
    bool touched = false;
    for (TermId& arg : args) {
        TermId next = rewrite(arg, from, to, counter, mask, replace_all, ok);
        if (!ok) return u;
        touched |= next != arg;
        arg = next;
    }
    if (!touched) return u;
    TermId found = a_.find_term(n.kind, n.symbol, args);
    if (found == k_invalid) {
        ok = false;
        return u;
    }
    return found;
}

int Engine::eval3(FormulaId f, FormulaId overridden, int value) {
    if (f == overridden) return value;
    const FormulaNode n = a_.formula(f);
    switch (n.kind) {
        case FormulaKind::Eq: {
            if (n.t0 == n.t1) return 1;
            std::uint32_t rx = find(element(n.t0)), ry = find(element(n.t1));
            if (rx == ry) return 1;
            unsigned bits = bits_between(rx, ry);
            if (!(bits & k_eq)) return -1;
            return bits == k_eq ? 1 : 0;
        }
        case FormulaKind::Le: {
            if (n.t0 == n.t1) return 1;
            std::uint32_t rx = find(element(n.t0)), ry = find(element(n.t1));
            if (rx == ry) return 1;
            unsigned bits = bits_between(rx, ry);
            if (!(bits & k_gt)) return 1;
            return bits == k_gt ? -1 : 0;
        }
        case FormulaKind::Not:
            return -eval3(n.f0, overridden, value);
        case FormulaKind::And: {
            int l = eval3(n.f0, overridden, value);
            if (l == -1) return -1;
            return std::min(l, eval3(n.f1, overridden, value));
        }
        case FormulaKind::Or: {
            int l = eval3(n.f0, overridden, value);
            if (l == 1) return 1;
            return std::max(l, eval3(n.f1, overridden, value));
        }
        case FormulaKind::Implies: {
            int l = eval3(n.f0, overridden, value);
            if (l == -1) return 1;
            return std::max(-l, eval3(n.f1, overridden, value));
        }
        default:
            throw std::invalid_argument(
                "propagation needs quantifier-free constraints");
    }
}

void Engine::collect_atoms(FormulaId f, std::vector<FormulaId>& out) {
    const FormulaNode n = a_.formula(f);
    switch (n.kind) {
        case FormulaKind::Eq:
        case FormulaKind::Le:
            if (std::find(out.begin(), out.end(), f) == out.end())
                out.push_back(f);
            return;
        case FormulaKind::Not:
            collect_atoms(n.f0, out);
            return;
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Implies:
            collect_atoms(n.f0, out);
            collect_atoms(n.f1, out);
            return;
        default:
            throw std::invalid_argument(
                "propagation needs quantifier-free constraints");
    }
}

bool Engine::process_constraint(std::size_t c) {
    int v = eval3(constraints_[c], k_invalid, 0);
    if (v == 1) {
        done_[c] = 1;  // possibilities only narrow, so this stays true
        return true;
    }
    auto premises_of_c = [&] {
        std::vector<std::uint32_t> prem;
        for (FormulaId atom : atoms_[c]) {
            const FormulaNode n = a_.formula(atom);
            std::uint32_t rx = find(element(n.t0));
            std::uint32_t ry = find(element(n.t1));
            append_pair_events(rx, ry, prem);
            append_root_events(rx, prem);
            append_root_events(ry, prem);
        }
        std::sort(prem.begin(), prem.end());
        prem.erase(std::unique(prem.begin(), prem.end()), prem.end());
        return prem;
    };
    if (v == -1) {
        fail(premises_of_c(), static_cast<int>(c));
        return false;
    }
    for (FormulaId atom : atoms_[c]) {
        if (eval3(atom, k_invalid, 0) != 0) continue;
        int forced = 0;
        if (eval3(constraints_[c], atom, 1) == -1)
            forced = -1;  // atom true would falsify the constraint
        else if (eval3(constraints_[c], atom, -1) == -1)
            forced = 1;
        if (forced == 0) continue;
        const FormulaNode n = a_.formula(atom);
        unsigned allowed;
        if (n.kind == FormulaKind::Eq)
            allowed = forced == 1 ? k_eq : (k_lt | k_gt);
        else
            allowed = forced == 1 ? (k_eq | k_lt) : k_gt;
        std::uint32_t rx = find(element(n.t0)), ry = find(element(n.t1));
        if (!restrict_roots(rx, ry, allowed, premises_of_c(),
                            static_cast<int>(c)))
            return false;
        if (!drain()) return false;
    }
    return true;
}

bool Engine::ordering_pass() {
    struct Edge {
        std::uint32_t from, to;
    };
    std::vector<Edge> edges;
    std::vector<std::uint32_t> edge_events;
    for (const auto& [key, fact] : pairs_) {
        auto lo = static_cast<std::uint32_t>(key >> 32);
        auto hi = static_cast<std::uint32_t>(key & 0xFFFFFFFFu);
        if (fact.bits == k_lt)
            edges.push_back({lo, hi});
        else if (fact.bits == k_gt)
            edges.push_back({hi, lo});
        else
            continue;
        edge_events.insert(edge_events.end(), fact.events.begin(),
                           fact.events.end());
        append_root_events(lo, edge_events);
        append_root_events(hi, edge_events);
    }
    if (edges.empty()) return true;
    std::sort(edge_events.begin(), edge_events.end());
    edge_events.erase(std::unique(edge_events.begin(), edge_events.end()),
                      edge_events.end());

    std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> next;
    for (const Edge& e : edges) next[e.from].push_back(e.to);

    // strict descendants of every node in the edge graph
    std::unordered_map<std::uint32_t, std::unordered_set<std::uint32_t>> below;
    std::vector<std::uint32_t> stack;
    for (const auto& [start, _] : next) {
        auto& reach = below[start];
        stack.assign(next[start].begin(), next[start].end());
        while (!stack.empty()) {
            std::uint32_t u = stack.back();
            stack.pop_back();
            if (!reach.insert(u).second) continue;
            auto it = next.find(u);
            if (it != next.end())
                stack.insert(stack.end(), it->second.begin(), it->second.end());
        }
        if (reach.count(start)) {
            fail(edge_events, -1);
            return false;
        }
    }

    // fold transitive consequences into existing pair entries
    struct Restriction {
        std::uint32_t lo, hi;
        unsigned allowed;
    };
    std::vector<Restriction> todo;
    for (const auto& [key, fact] : pairs_) {
        auto lo = static_cast<std::uint32_t>(key >> 32);
        auto hi = static_cast<std::uint32_t>(key & 0xFFFFFFFFu);
        auto lo_it = below.find(lo);
        if (lo_it != below.end() && lo_it->second.count(hi) &&
            fact.bits != k_lt)
            todo.push_back({lo, hi, k_lt});
        auto hi_it = below.find(hi);
        if (hi_it != below.end() && hi_it->second.count(lo) &&
            fact.bits != k_gt)
            todo.push_back({lo, hi, k_gt});
    }
    for (const Restriction& r : todo) {
        // earlier restrictions may have merged classes; re-canonicalize so the
        // entry is keyed by live roots (class semantics are unaffected)
        if (!restrict_roots(find(r.lo), find(r.hi), r.allowed, edge_events, -1))
            return false;
        if (!drain()) return false;
    }
    return true;
}

std::vector<std::size_t> Engine::conflict_core() const {
    std::unordered_set<std::uint32_t> seen;
    std::vector<std::uint32_t> stack(conflict_premises_.begin(),
                                     conflict_premises_.end());
    std::unordered_set<std::size_t> instances;
    if (conflict_instance_ >= 0)
        instances.insert(static_cast<std::size_t>(conflict_instance_));
    while (!stack.empty()) {
        std::uint32_t id = stack.back();
        stack.pop_back();
        if (!seen.insert(id).second) continue;
        const Event& ev = events_[id];
        if (ev.instance >= 0)
            instances.insert(static_cast<std::size_t>(ev.instance));
        stack.insert(stack.end(), ev.premises.begin(), ev.premises.end());
    }
    std::vector<std::size_t> core(instances.begin(), instances.end());
    std::sort(core.begin(), core.end());
    return core;
}

PropagationOutcome Engine::run() {
    atoms_.resize(constraints_.size());
    done_.assign(constraints_.size(), 0);
    for (std::size_t c = 0; c < constraints_.size(); ++c) {
        collect_atoms(constraints_[c], atoms_[c]);
        for (FormulaId atom : atoms_[c]) {
            const FormulaNode n = a_.formula(atom);
            for (TermId t : {n.t0, n.t1}) {
                if (!a_.ground(t))
                    throw std::invalid_argument(
                        "propagation needs ground constraints");
                if (!lambda_.contains(t))
                    throw std::invalid_argument(
                        "constraint atom term is not a member of the term set");
                element(t);
            }
        }
    }
    changed_ = true;
    while (changed_ && !conflict_) {
        changed_ = false;
        for (std::size_t c = 0; c < constraints_.size() && !conflict_; ++c) {
            if (done_[c]) continue;
            if (!process_constraint(c)) break;
        }
        if (!conflict_) ordering_pass();
    }
    PropagationOutcome out;
    out.conflict = conflict_;
    if (conflict_) out.core = conflict_core();
    return out;
}

}  // namespace

PropagationOutcome propagate_root(Arena& a, const TermSet& lambda,
                                  const std::vector<FormulaId>& constraints,
                                  bool minimize_core) {
    PropagationOutcome out = Engine(a, lambda, constraints).run();
    if (!out.conflict || !minimize_core) return out;
    std::vector<std::size_t> core = out.core;
    for (std::size_t i = 0; i < core.size();) {
        std::vector<std::size_t> trial = core;
        trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
        std::vector<FormulaId> subset;
        subset.reserve(trial.size());
        for (std::size_t idx : trial) subset.push_back(constraints[idx]);
        if (Engine(a, lambda, subset).run().conflict)
            core = std::move(trial);
        else
            ++i;
    }
    out.core = std::move(core);
    return out;
}

}  // namespace hc
