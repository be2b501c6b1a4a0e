#include "hc/normalize.hpp"

#include <string>
#include <unordered_map>
#include <unordered_set>

namespace hc {

namespace {

FormulaId desugar(Arena& a, FormulaId f) {
    const FormulaNode n = a.formula(f);
    switch (n.kind) {
        case FormulaKind::Eq:
        case FormulaKind::Le:
            return f;
        case FormulaKind::Not:
            return a.not_(desugar(a, n.f0));
        case FormulaKind::And:
            return a.and_(desugar(a, n.f0), desugar(a, n.f1));
        case FormulaKind::Or:
            return a.or_(desugar(a, n.f0), desugar(a, n.f1));
        case FormulaKind::Implies:
            return a.implies(desugar(a, n.f0), desugar(a, n.f1));
        case FormulaKind::Forall:
            return a.forall(n.var, desugar(a, n.f0));
        case FormulaKind::Exists:
            return a.exists(n.var, desugar(a, n.f0));
        case FormulaKind::BoundedForall:
            return a.forall(n.var, a.implies(a.le(a.var(n.var), n.t0),
                                             desugar(a, n.f0)));
        case FormulaKind::BoundedExists:
            return a.exists(n.var, a.and_(a.le(a.var(n.var), n.t0),
                                          desugar(a, n.f0)));
    }
    throw DomainError("corrupt formula node");
}

// negation normal form over desugared input; neg tracks whether the current
// subformula sits under an odd number of negations
FormulaId nnf(Arena& a, FormulaId f, bool neg) {
    const FormulaNode n = a.formula(f);
    switch (n.kind) {
        case FormulaKind::Eq:
        case FormulaKind::Le:
            return neg ? a.not_(f) : f;
        case FormulaKind::Not:
            return nnf(a, n.f0, !neg);
        case FormulaKind::And:
            return neg ? a.or_(nnf(a, n.f0, true), nnf(a, n.f1, true))
                       : a.and_(nnf(a, n.f0, false), nnf(a, n.f1, false));
        case FormulaKind::Or:
            return neg ? a.and_(nnf(a, n.f0, true), nnf(a, n.f1, true))
                       : a.or_(nnf(a, n.f0, false), nnf(a, n.f1, false));
        case FormulaKind::Implies:
            return neg ? a.and_(nnf(a, n.f0, false), nnf(a, n.f1, true))
                       : a.or_(nnf(a, n.f0, true), nnf(a, n.f1, false));
        case FormulaKind::Forall:
            return neg ? a.exists(n.var, nnf(a, n.f0, true))
                       : a.forall(n.var, nnf(a, n.f0, false));
        case FormulaKind::Exists:
            return neg ? a.forall(n.var, nnf(a, n.f0, true))
                       : a.exists(n.var, nnf(a, n.f0, false));
        default:
            throw DomainError("bounded quantifier survived desugaring");
    }
}

class Rectifier {
  public:
    Rectifier(Arena& a, FormulaId whole) : a_(a) {
        for (VarId v : a.free_vars(whole)) taken_.insert(a.var_name(v));
    }

    FormulaId run(FormulaId f, std::unordered_map<VarId, TermId> env) {
        const FormulaNode n = a_.formula(f);
        switch (n.kind) {
            case FormulaKind::Eq: {
                TermId l = a_.subst_term(n.t0, env);
                return a_.eq(l, a_.subst_term(n.t1, env));
            }
            case FormulaKind::Le: {
                TermId l = a_.subst_term(n.t0, env);
                return a_.le(l, a_.subst_term(n.t1, env));
            }
            case FormulaKind::Not:
                return a_.not_(run(n.f0, env));
            // fresh names are handed out left to right, so the left child has
            // to be rebuilt before the right one
            case FormulaKind::And: {
                FormulaId l = run(n.f0, env);
                return a_.and_(l, run(n.f1, env));
            }
            case FormulaKind::Or: {
                FormulaId l = run(n.f0, env);
                return a_.or_(l, run(n.f1, env));
            }
            case FormulaKind::Forall: {
                VarId fresh = next_name();
                env[n.var] = a_.var(fresh);
                return a_.forall(fresh, run(n.f0, std::move(env)));
            }
            case FormulaKind::Exists: {
                VarId fresh = next_name();
                env[n.var] = a_.var(fresh);
                return a_.exists(fresh, run(n.f0, std::move(env)));
            }
            default:
                throw DomainError("rectifier expects negation normal form");
        }
    }

  private:
    VarId next_name() {
        while (true) {
            std::string name = "v" + std::to_string(counter_++);
            if (!taken_.count(name)) return a_.var_id(name);
        }
    }

    Arena& a_;
    std::unordered_set<std::string> taken_;
    unsigned counter_ = 0;
};

bool rnnf_shape(const Arena& a, FormulaId f, std::vector<VarId>& binders) {
    const FormulaNode& n = a.formula(f);
    switch (n.kind) {
        case FormulaKind::Eq:
        case FormulaKind::Le:
            return true;
        case FormulaKind::Not: {
            FormulaKind inner = a.formula(n.f0).kind;
            return inner == FormulaKind::Eq || inner == FormulaKind::Le;
        }
        case FormulaKind::And:
        case FormulaKind::Or:
            return rnnf_shape(a, n.f0, binders) &&
                   rnnf_shape(a, n.f1, binders);
        case FormulaKind::Forall:
        case FormulaKind::Exists:
            binders.push_back(n.var);
            return rnnf_shape(a, n.f0, binders);
        default:
            return false;
    }
}

}  // namespace

FormulaId desugar_bounded(Arena& a, FormulaId f) { return desugar(a, f); }

FormulaId rnnf(Arena& a, FormulaId f) {
    FormulaId flat = nnf(a, desugar(a, f), false);
    return Rectifier(a, flat).run(flat, {});
}

bool is_rnnf(const Arena& a, FormulaId f) {
    std::vector<VarId> binders;
    if (!rnnf_shape(a, f, binders)) return false;
    std::unordered_set<VarId> seen;
    for (VarId v : binders)
        if (!seen.insert(v).second) return false;
    for (VarId v : a.free_vars(f))
        if (seen.count(v)) return false;
    return true;
}

FormulaId alpha_key(Arena& a, FormulaId f, std::vector<VarId>* slot_order) {
    // names starting with '.' cannot be produced by the parser, so slot and
    // binder names never collide with user variables
    std::unordered_map<VarId, TermId> env;
    std::vector<VarId> slots;
    unsigned binder_count = 0;

    auto walk = [&](auto&& self, FormulaId g) -> FormulaId {
        const FormulaNode n = a.formula(g);
        auto fix_term = [&](TermId t) {
            for (VarId v : a.term_vars(t)) {
                if (env.count(v)) continue;
                VarId slot =
                    a.var_id("." + std::to_string(slots.size()) + "s");
                env[v] = a.var(slot);
                slots.push_back(v);
            }
            return a.subst_term(t, env);
        };
        // slot and binder numbering runs left to right; keep child rebuilds
        // explicitly sequenced
        switch (n.kind) {
            case FormulaKind::Eq: {
                TermId l = fix_term(n.t0);
                return a.eq(l, fix_term(n.t1));
            }
            case FormulaKind::Le: {
                TermId l = fix_term(n.t0);
                return a.le(l, fix_term(n.t1));
            }
            case FormulaKind::Not:
                return a.not_(self(self, n.f0));
            case FormulaKind::And: {
                FormulaId l = self(self, n.f0);
                return a.and_(l, self(self, n.f1));
            }
            case FormulaKind::Or: {
                FormulaId l = self(self, n.f0);
                return a.or_(l, self(self, n.f1));
            }
            case FormulaKind::Implies: {
                FormulaId l = self(self, n.f0);
                return a.implies(l, self(self, n.f1));
            }
            case FormulaKind::Forall:
            case FormulaKind::Exists: {
                VarId fresh =
                    a.var_id("." + std::to_string(binder_count++) + "b");
                TermId saved_binding{};
                bool had = env.count(n.var);
                if (had) saved_binding = env[n.var];
                env[n.var] = a.var(fresh);
                FormulaId body = self(self, n.f0);
                if (had)
                    env[n.var] = saved_binding;
                else
                    env.erase(n.var);
                return n.kind == FormulaKind::Forall ? a.forall(fresh, body)
                                                     : a.exists(fresh, body);
            }
            case FormulaKind::BoundedForall:
            case FormulaKind::BoundedExists: {
                TermId bound = fix_term(n.t0);
                VarId fresh =
                    a.var_id("." + std::to_string(binder_count++) + "b");
                TermId saved_binding{};
                bool had = env.count(n.var);
                if (had) saved_binding = env[n.var];
                env[n.var] = a.var(fresh);
                FormulaId body = self(self, n.f0);
                if (had)
                    env[n.var] = saved_binding;
                else
                    env.erase(n.var);
                return n.kind == FormulaKind::BoundedForall
                           ? a.bounded_forall(fresh, bound, body)
                           : a.bounded_exists(fresh, bound, body);
            }
        }
        throw DomainError("corrupt formula node");
    };

    FormulaId key = walk(walk, f);
    if (slot_order) *slot_order = std::move(slots);
    return key;
}

}  // namespace hc
