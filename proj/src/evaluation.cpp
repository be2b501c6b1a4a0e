#include "hc/evaluation.hpp"

#include <algorithm>
#include <unordered_set>

#include "hc/parse.hpp"
#include "hc/print.hpp"

namespace hc {

namespace {

std::uint64_t pair_key(TermId t, TermId s) {
    return (static_cast<std::uint64_t>(t) << 32) | s;
}

}  // namespace

void validate_pre_evaluation(const Arena& a, const PreEvaluation& p) {
    if (p.terms.empty())
        throw DomainError("pre-evaluation needs at least one term");
    if (p.seps.size() + 1 != p.terms.size())
        throw DomainError("pre-evaluation has " + std::to_string(p.terms.size()) +
                          " terms but " + std::to_string(p.seps.size()) +
                          " separators");
    std::unordered_set<TermId> seen;
    for (TermId t : p.terms) {
        if (!a.ground(t))
            throw DomainError("pre-evaluation term '" + term_text(a, t) +
                              "' is not ground");
        if (!seen.insert(t).second)
            throw DomainError("pre-evaluation repeats term '" +
                              term_text(a, t) + "'");
    }
}

BlockStructure relations(const Arena& a, const PreEvaluation& p) {
    validate_pre_evaluation(a, p);
    BlockStructure r;
    r.blocks.push_back({p.terms[0]});
    for (std::size_t i = 1; i < p.terms.size(); ++i) {
        if (p.seps[i - 1]) r.blocks.emplace_back();
        r.blocks.back().push_back(p.terms[i]);
    }
    for (std::uint32_t b = 0; b < r.blocks.size(); ++b)
        for (TermId t : r.blocks[b]) r.block_of.emplace(t, b);
    return r;
}

// ── one-variable contexts ────────────────────────────────────────────────────

std::vector<std::pair<TermId, TermId>> hole_pairs(const Arena& a, TermId A,
                                                  TermId B) {
    std::vector<std::pair<TermId, TermId>> out{{A, B}};
    const TermNode& x = a.term(A);
    const TermNode& y = a.term(B);
    if (x.kind != y.kind || x.symbol != y.symbol || x.arity != y.arity ||
        x.arity == 0)
        return out;

    // aligned heads: a deeper hole must explain every differing child at once
    std::vector<std::pair<TermId, TermId>> common;
    bool first = true;
    auto ax = a.args(A);
    auto ay = a.args(B);
    for (std::size_t i = 0; i < ax.size(); ++i) {
        if (ax[i] == ay[i]) continue;
        auto sub = hole_pairs(a, ax[i], ay[i]);
        if (first) {
            common = std::move(sub);
            first = false;
        } else {
            std::vector<std::pair<TermId, TermId>> kept;
            for (const auto& pr : common)
                if (std::find(sub.begin(), sub.end(), pr) != sub.end())
                    kept.push_back(pr);
            common = std::move(kept);
        }
        if (common.empty()) break;
    }
    out.insert(out.end(), common.begin(), common.end());
    return out;
}

ContextIndex::ContextIndex(const Arena& a, const std::vector<TermId>& domain) {
    for (TermId A : domain)
        for (TermId B : domain) {
            if (A == B) continue;
            auto pairs = hole_pairs(a, A, B);
            // entry 0 is the trivial context; only deeper holes constrain
            for (std::size_t i = 1; i < pairs.size(); ++i)
                buckets_[pair_key(pairs[i].first, pairs[i].second)]
                    .emplace_back(A, B);
        }
}

std::span<const std::pair<TermId, TermId>> ContextIndex::contexts(
    TermId t, TermId s) const {
    auto it = buckets_.find(pair_key(t, s));
    if (it == buckets_.end()) return {};
    return it->second;
}

// ── evaluations ──────────────────────────────────────────────────────────────

bool is_evaluation(const Arena& a, const PreEvaluation& p,
                   const ContextIndex& ctx) {
    BlockStructure r = relations(a, p);
    for (const std::vector<TermId>& block : r.blocks)
        for (TermId t : block)
            for (TermId s : block) {
                if (t == s) continue;
                for (const auto& [A, B] : ctx.contexts(t, s))
                    if (r.block_of.at(A) != r.block_of.at(B)) return false;
            }
    return true;
}

bool is_evaluation(const Arena& a, const PreEvaluation& p) {
    return is_evaluation(a, p, ContextIndex(a, p.terms));
}

std::uint32_t Evaluation::block_of(TermId t) const {
    auto it = rel_.block_of.find(t);
    if (it == rel_.block_of.end())
        throw DomainError("term is not in the evaluation domain");
    return it->second;
}

Evaluation make_evaluation(const Arena& a, PreEvaluation p) {
    if (!is_evaluation(a, p))
        throw DomainError("pre-evaluation violates a context constraint");
    Evaluation e;
    e.rel_ = relations(a, p);
    e.seq_ = std::move(p);
    return e;
}

bool satisfies(const Arena& a, const Evaluation& e, FormulaId f) {
    const FormulaNode& n = a.formula(f);
    auto member = [&](TermId t) {
        if (!e.in_domain(t))
            throw DomainError("term '" + term_text(a, t) +
                              "' is not in the evaluation domain");
        return t;
    };
    switch (n.kind) {
        case FormulaKind::Eq: return e.eq(member(n.t0), member(n.t1));
        case FormulaKind::Le: return e.le(member(n.t0), member(n.t1));
        case FormulaKind::Not: return !satisfies(a, e, n.f0);
        case FormulaKind::And:
            return satisfies(a, e, n.f0) && satisfies(a, e, n.f1);
        case FormulaKind::Or:
            return satisfies(a, e, n.f0) || satisfies(a, e, n.f1);
        case FormulaKind::Implies:
            return !satisfies(a, e, n.f0) || satisfies(a, e, n.f1);
        default:
            throw DomainError(
                "satisfaction is defined for quantifier-free formulas");
    }
}

bool is_T_evaluation(Arena& a, const Evaluation& e, const Theory& t,
                     const TermSet& lambda) {
    if (lambda.size() != e.sequence().terms.size())
        throw DomainError("evaluation domain differs from the term set");
    for (TermId x : lambda.terms)
        if (!e.in_domain(x))
            throw DomainError("evaluation domain differs from the term set");
    for (const GroundInstance& gi : available_instances(a, t, lambda))
        if (!satisfies(a, e, gi.formula)) return false;
    return true;
}

std::uint64_t enumerate_pre_evaluations(
    const Arena& a, const TermSet& lambda,
    const std::function<bool(const PreEvaluation&)>& visit) {
    if (lambda.size() < 2)
        throw DomainError("enumeration needs at least two terms");
    (void)a;

    const std::size_t n = lambda.size();
    PreEvaluation p;
    p.terms.assign(n, 0);
    p.seps.assign(n - 1, false);
    std::vector<bool> used(n, false);
    std::uint64_t count = 0;
    bool stop = false;

    // lexicographic generation: the term for a slot ranges over unused members
    // in code order, then the separator after it tries ~ before <
    auto place = [&](auto&& self, std::size_t depth) -> void {
        if (stop) return;
        if (depth == n) {
            ++count;
            if (!visit(p)) stop = true;
            return;
        }
        for (std::size_t i = 0; i < n && !stop; ++i) {
            if (used[i]) continue;
            used[i] = true;
            p.terms[depth] = lambda.terms[i];
            if (depth + 1 == n) {
                self(self, depth + 1);
            } else {
                p.seps[depth] = false;
                self(self, depth + 1);
                if (!stop) {
                    p.seps[depth] = true;
                    self(self, depth + 1);
                }
            }
            used[i] = false;
        }
    };
    place(place, 0);
    return count;
}

// ── text form ────────────────────────────────────────────────────────────────

std::string evaluation_text(const Arena& a, const PreEvaluation& p) {
    validate_pre_evaluation(a, p);
    std::string out = term_text(a, p.terms[0]);
    for (std::size_t i = 1; i < p.terms.size(); ++i) {
        out += p.seps[i - 1] ? " < " : " ~ ";
        out += term_text(a, p.terms[i]);
    }
    return out;
}

PreEvaluation evaluation_from_text(Arena& a, std::string_view text) {
    PreEvaluation p;
    std::size_t start = 0;
    auto emit = [&](std::size_t end) {
        std::string_view piece = text.substr(start, end - start);
        p.terms.push_back(parse_term(a, piece));
    };
    // terms never contain '~' or '<'; "<=" does not occur in term syntax
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '~' || text[i] == '<') {
            emit(i);
            p.seps.push_back(text[i] == '<');
            start = i + 1;
        }
    }
    emit(text.size());
    validate_pre_evaluation(a, p);
    return p;
}

}  // namespace hc
