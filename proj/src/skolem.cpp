#include "hc/skolem.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "hc/coding.hpp"
#include "hc/normalize.hpp"
#include "hc/parse.hpp"

namespace hc {

// ── registry ─────────────────────────────────────────────────────────────────

SkolemId SkolemRegistry::symbol_for(FormulaId exists_formula,
                                    std::vector<VarId>& free_order) {
    if (arena_->formula(exists_formula).kind != FormulaKind::Exists)
        throw DomainError("Skolem symbols belong to existential formulas");
    std::vector<VarId> slots;
    FormulaId key = alpha_key(*arena_, exists_formula, &slots);
    free_order = std::move(slots);
    if (auto it = by_key_.find(key); it != by_key_.end()) return it->second;

    auto arity = static_cast<std::uint32_t>(free_order.size());
    SkolemId sym = arena_->declare_skolem(arity);
    mpz_class body_code = encode_formula(*arena_, arena_->formula(key).f0).value;
    entries_.push_back({key, exists_formula, arity, sym, std::move(body_code)});
    by_key_.emplace(key, sym);
    return sym;
}

const SkolemEntry* SkolemRegistry::find_entry(SkolemId s) const {
    for (const SkolemEntry& e : entries_)
        if (e.symbol == s) return &e;
    return nullptr;
}

const SkolemEntry& SkolemRegistry::entry(SkolemId s) const {
    if (const SkolemEntry* e = find_entry(s)) return *e;
    throw DomainError("Skolem symbol is not owned by this registry");
}

// ── Skolemization ────────────────────────────────────────────────────────────

namespace {

// (exists x phi)^S = phi^S [ f(ys) / x ]  with ys the free variables of the
// existential in first-occurrence order; symbols are claimed at pre-order
// entry, before the body is processed, so outer existentials get the earlier
// symbols.
FormulaId replace_existentials(Arena& a, FormulaId f, SkolemRegistry& reg) {
    const FormulaNode n = a.formula(f);
    switch (n.kind) {
        case FormulaKind::Eq:
        case FormulaKind::Le:
        case FormulaKind::Not:
            return f;
        case FormulaKind::And: {
            FormulaId l = replace_existentials(a, n.f0, reg);
            FormulaId r = replace_existentials(a, n.f1, reg);
            return a.and_(l, r);
        }
        case FormulaKind::Or: {
            FormulaId l = replace_existentials(a, n.f0, reg);
            FormulaId r = replace_existentials(a, n.f1, reg);
            return a.or_(l, r);
        }
        case FormulaKind::Forall:
            return a.forall(n.var, replace_existentials(a, n.f0, reg));
        case FormulaKind::Exists: {
            std::vector<VarId> order;
            SkolemId sym = reg.symbol_for(f, order);
            std::vector<TermId> args;
            args.reserve(order.size());
            for (VarId v : order) args.push_back(a.var(v));
            TermId witness = a.skolem(sym, args);
            FormulaId body = replace_existentials(a, n.f0, reg);
            return a.subst_formula(body, {{n.var, witness}});
        }
        default:
            throw DomainError("formula is not in rectified negation normal form");
    }
}

// removes every universal quantifier, recording bound variables in pre-order;
// that ordering names the free slots of the open formula
FormulaId strip_universals(Arena& a, FormulaId f, std::vector<VarId>& order) {
    const FormulaNode n = a.formula(f);
    switch (n.kind) {
        case FormulaKind::Eq:
        case FormulaKind::Le:
        case FormulaKind::Not:
            return f;
        case FormulaKind::And: {
            FormulaId l = strip_universals(a, n.f0, order);
            FormulaId r = strip_universals(a, n.f1, order);
            return a.and_(l, r);
        }
        case FormulaKind::Or: {
            FormulaId l = strip_universals(a, n.f0, order);
            FormulaId r = strip_universals(a, n.f1, order);
            return a.or_(l, r);
        }
        case FormulaKind::Forall:
            order.push_back(n.var);
            return strip_universals(a, n.f0, order);
        default:
            throw DomainError("existential survived Skolemization");
    }
}

}  // namespace

SkolemizedFormula skolemize(Arena& a, FormulaId f, SkolemRegistry& reg) {
    if (!a.free_vars(f).empty())
        throw DomainError("cannot Skolemize an open formula");
    SkolemizedFormula out;
    out.rnnf = rnnf(a, f);
    out.with_s = replace_existentials(a, out.rnnf, reg);
    out.open = strip_universals(a, out.with_s, out.free_vars);
    return out;
}

FormulaId instance(Arena& a, FormulaId open,
                   const std::unordered_map<VarId, TermId>& subst) {
    for (VarId v : a.free_vars(open)) {
        auto it = subst.find(v);
        if (it == subst.end())
            throw DomainError("substitution misses variable '" + a.var_name(v) +
                              "'");
        if (!a.ground(it->second))
            throw DomainError("substitution for '" + a.var_name(v) +
                              "' is not ground");
    }
    return a.subst_formula(open, subst);
}

// ── term sets ────────────────────────────────────────────────────────────────

TermSet make_term_set(const Arena& a, std::vector<TermId> terms,
                      std::string provenance) {
    for (TermId t : terms)
        if (!a.ground(t)) throw DomainError("term set member is not ground");
    std::sort(terms.begin(), terms.end(),
              [&a](TermId x, TermId y) { return term_code_less(a, x, y); });
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());

    TermSet s;
    s.terms = std::move(terms);
    s.member.assign(a.term_count(), false);
    for (TermId t : s.terms) s.member[t] = true;
    s.provenance = std::move(provenance);
    return s;
}

// ── theories ─────────────────────────────────────────────────────────────────

Theory make_theory(Arena& a, SkolemRegistry& reg, std::string name,
                   const std::vector<FormulaId>& axioms) {
    Theory t;
    t.name = std::move(name);
    t.axioms.reserve(axioms.size());
    for (FormulaId ax : axioms) {
        if (!a.free_vars(ax).empty())
            throw DomainError("theory axiom must be a sentence");
        t.axioms.push_back({ax, skolemize(a, ax, reg)});
    }
    return t;
}

namespace {

// square-bounded existence of the square, and induction for it along S
const char* const k_square_witness = "forall x (exists y <= x*x (y = x*x))";
const char* const k_square_induction =
    "(exists y <= 0*0 (y = 0*0))"
    " & (forall x ((exists y <= x*x (y = x*x))"
    " -> (exists y <= S(x)*S(x) (y = S(x)*S(x)))))"
    " -> (forall x (exists y <= x*x (y = x*x)))";

const std::vector<const char*> k_ex3_axioms = {
    "forall x (S(x) != 0)",
    "forall x (forall y (x + S(y) = S(x + y)))",
    "forall x (exists z (x != 0 -> x = S(z)))",
    "forall x (forall y (exists z (x <= y -> z + x = y)))",
};

// a point with x <= 0 but x != 0; appending this to EX3 makes the bundle
// refutable, which exercises the hull-climbing search
const char* const k_le_zero_witness = "exists x (x <= 0 & x != 0)";

const std::vector<const char*> k_t1_axioms = {
    "forall x (x + 0 = x)",
    "forall x (forall y (x + S(y) = S(x + y)))",
    "forall x (x * 0 = 0)",
    "forall x (forall y (x * S(y) = x * y + x))",
    "forall x ((x <= 0 -> x = 0) & (x = 0 -> x <= 0))",
    "forall x (forall y ((x <= S(y) -> x = S(y) | x <= y)"
    " & (x = S(y) | x <= y -> x <= S(y))))",
    "forall x (forall y (x <= y | y <= x))",
    "forall x (forall y (forall z (x <= y & y <= z -> x <= z)))",
    "forall x (forall z (x <= z + x))",
    "forall x (forall z (x <= x + z))",
    "forall x (forall y (forall z (x + z <= y + z -> x <= y)))",
    "forall x (forall y (forall z (z != 0 & x * z <= y * z -> x <= y)))",
    "forall x (forall y ((x != y -> S(x) <= y | S(y) <= x)"
    " & (S(x) <= y | S(y) <= x -> x != y)))",
    "forall x (forall y ((!(x <= y) -> S(y) <= x) & (S(y) <= x -> !(x <= y))))",
    "forall x (forall y (x <= y -> exists z (z + x = y)))",
    "forall x (forall y (y != 0 -> exists q (exists r (x = r + q * y & r <= y))))",
};

}  // namespace

Theory preset(Arena& a, SkolemRegistry& reg, const std::string& name) {
    std::vector<const char*> texts;
    if (name == "EX2") {
        texts = {"forall x (x * 0 = 0)", k_square_induction};
    } else if (name == "IND_SQ") {
        texts = {k_square_induction};
    } else if (name == "OMEGA0") {
        texts = {k_square_witness};
    } else if (name == "EX3") {
        texts = k_ex3_axioms;
    } else if (name == "EX3_PLUS") {
        texts = k_ex3_axioms;
        texts.push_back(k_le_zero_witness);
    } else if (name == "T1") {
        texts = k_t1_axioms;
    } else {
        throw DomainError("unknown theory preset '" + name + "'");
    }
    std::vector<FormulaId> axioms;
    axioms.reserve(texts.size());
    for (const char* s : texts) axioms.push_back(parse_formula(a, s));
    return make_theory(a, reg, name, axioms);
}

namespace {

void collect_term_symbols(const Arena& a, TermId t, std::set<SkolemId>& out) {
    const TermNode& n = a.term(t);
    if (n.kind == TermKind::Skolem) out.insert(n.symbol);
    for (TermId c : a.args(t)) collect_term_symbols(a, c, out);
}

void collect_formula_symbols(const Arena& a, FormulaId f,
                             std::set<SkolemId>& out) {
    const FormulaNode& n = a.formula(f);
    switch (n.kind) {
        case FormulaKind::Eq:
        case FormulaKind::Le:
            collect_term_symbols(a, n.t0, out);
            collect_term_symbols(a, n.t1, out);
            return;
        case FormulaKind::Not:
        case FormulaKind::Forall:
        case FormulaKind::Exists:
            collect_formula_symbols(a, n.f0, out);
            return;
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Implies:
            collect_formula_symbols(a, n.f0, out);
            collect_formula_symbols(a, n.f1, out);
            return;
        case FormulaKind::BoundedForall:
        case FormulaKind::BoundedExists:
            collect_term_symbols(a, n.t0, out);
            collect_formula_symbols(a, n.f0, out);
            return;
    }
}

}  // namespace

std::vector<SkolemId> theory_symbols(const Arena& a, const Theory& t) {
    std::set<SkolemId> s;
    for (const TheoryAxiom& ax : t.axioms) collect_formula_symbols(a, ax.sk.open, s);
    return {s.begin(), s.end()};
}

mpz_class theory_code_bound(const SkolemRegistry& reg, const Theory& t) {
    mpz_class bound = 0;
    for (SkolemId s : theory_symbols(reg.arena(), t)) {
        const SkolemEntry& e = reg.entry(s);
        if (e.body_code > bound) bound = e.body_code;
    }
    return bound;
}

// ── ground instances ─────────────────────────────────────────────────────────

std::vector<TermId> atom_terms(const Arena& a, FormulaId f) {
    std::vector<TermId> out;
    std::unordered_set<TermId> seen;
    auto push = [&](TermId t) {
        if (seen.insert(t).second) out.push_back(t);
    };
    auto walk = [&](auto&& self, FormulaId g) -> void {
        const FormulaNode& n = a.formula(g);
        switch (n.kind) {
            case FormulaKind::Eq:
            case FormulaKind::Le:
                push(n.t0);
                push(n.t1);
                return;
            case FormulaKind::Not:
            case FormulaKind::Forall:
            case FormulaKind::Exists:
                self(self, n.f0);
                return;
            case FormulaKind::And:
            case FormulaKind::Or:
            case FormulaKind::Implies:
                self(self, n.f0);
                self(self, n.f1);
                return;
            case FormulaKind::BoundedForall:
            case FormulaKind::BoundedExists:
                push(n.t0);
                self(self, n.f0);
                return;
        }
    };
    walk(walk, f);
    return out;
}

namespace {

// substitution as a tiny association list; axioms have at most a handful of
// free variables, so linear scans beat hashing here
struct Binding {
    std::vector<std::pair<VarId, TermId>> items;

    const TermId* find(VarId v) const {
        for (const auto& [w, t] : items)
            if (w == v) return &t;
        return nullptr;
    }
    bool bind(VarId v, TermId t) {
        if (const TermId* cur = find(v)) return *cur == t;
        items.emplace_back(v, t);
        return true;
    }
};

// image of a pattern under the binding, without creating new terms; k_invalid
// when some piece does not already exist in the arena
TermId lookup_subst(const Arena& a, TermId pat, const Binding& b) {
    const TermNode& n = a.term(pat);
    if (n.kind == TermKind::Var) {
        const TermId* t = b.find(n.symbol);
        return t ? *t : k_invalid;
    }
    if (n.ground) return pat;
    std::vector<TermId> kids;
    kids.reserve(n.arity);
    for (TermId c : a.args(pat)) {
        TermId r = lookup_subst(a, c, b);
        if (r == k_invalid) return k_invalid;
        kids.push_back(r);
    }
    return a.find_term(n.kind, n.symbol, kids);
}

bool match_pattern(const Arena& a, TermId pat, TermId w, Binding& b) {
    const TermNode& p = a.term(pat);
    if (p.kind == TermKind::Var) return b.bind(p.symbol, w);
    if (p.ground) return pat == w;
    const TermNode& q = a.term(w);
    if (q.kind != p.kind || q.symbol != p.symbol || q.arity != p.arity)
        return false;
    auto pa = a.args(pat);
    auto wa = a.args(w);
    for (std::size_t i = 0; i < pa.size(); ++i)
        if (!match_pattern(a, pa[i], wa[i], b)) return false;
    return true;
}

bool atoms_in_lambda(const Arena& a, const std::vector<TermId>& var_atoms,
                     const Binding& b, const TermSet& lambda) {
    for (TermId pat : var_atoms) {
        TermId t = lookup_subst(a, pat, b);
        if (t == k_invalid || !lambda.contains(t)) return false;
    }
    return true;
}

// direct product enumeration, pruning each atom as soon as its variables are
// all assigned; emits tuples in lambda's code order
void enumerate_tuples(const Arena& a, const std::vector<VarId>& fvs,
                      const std::vector<std::vector<TermId>>& atoms_by_pos,
                      const TermSet& lambda, std::size_t pos, Binding& b,
                      std::vector<TermId>& cur,
                      std::vector<std::vector<TermId>>& out) {
    if (pos == fvs.size()) {
        out.push_back(cur);
        return;
    }
    for (TermId t : lambda.terms) {
        cur[pos] = t;
        b.items.emplace_back(fvs[pos], t);
        if (atoms_in_lambda(a, atoms_by_pos[pos], b, lambda))
            enumerate_tuples(a, fvs, atoms_by_pos, lambda, pos + 1, b, cur, out);
        b.items.pop_back();
    }
}

// join-style enumeration for large lambda: repeatedly extend partial bindings
// by matching the most constrained unresolved atom against lambda's members
std::vector<std::vector<TermId>> join_tuples(const Arena& a,
                                             const std::vector<VarId>& fvs,
                                             std::vector<TermId> var_atoms,
                                             const TermSet& lambda) {
    std::sort(var_atoms.begin(), var_atoms.end(), [&](TermId x, TermId y) {
        std::size_t vx = a.term_vars(x).size(), vy = a.term_vars(y).size();
        if (vx != vy) return vx > vy;
        std::size_t sx = a.term_tree_size(x), sy = a.term_tree_size(y);
        if (sx != sy) return sx > sy;
        return x < y;
    });

    std::vector<Binding> parts{Binding{}};
    for (TermId pat : var_atoms) {
        std::vector<VarId> pvars = a.term_vars(pat);
        std::vector<Binding> next;
        for (const Binding& b : parts) {
            bool bound = true;
            for (VarId v : pvars) bound = bound && b.find(v) != nullptr;
            if (bound) {
                TermId t = lookup_subst(a, pat, b);
                if (t != k_invalid && lambda.contains(t)) next.push_back(b);
                continue;
            }
            const TermNode& p = a.term(pat);
            for (TermId w : lambda.terms) {
                if (p.kind != TermKind::Var) {
                    const TermNode& q = a.term(w);
                    if (q.kind != p.kind || q.symbol != p.symbol ||
                        q.arity != p.arity)
                        continue;
                }
                Binding nb = b;
                if (match_pattern(a, pat, w, nb)) next.push_back(std::move(nb));
            }
        }
        parts = std::move(next);
        if (parts.empty()) break;
    }

    // matching can bind a variable to a proper subterm, so membership of the
    // substituted values themselves still has to be enforced
    std::vector<std::vector<TermId>> out;
    for (const Binding& b : parts) {
        std::vector<TermId> tup(fvs.size());
        bool ok = true;
        for (std::size_t i = 0; i < fvs.size() && ok; ++i) {
            const TermId* t = b.find(fvs[i]);
            ok = t != nullptr && lambda.contains(*t);
            if (ok) tup[i] = *t;
        }
        if (ok && atoms_in_lambda(a, var_atoms, b, lambda))
            out.push_back(std::move(tup));
    }

    std::unordered_map<TermId, std::uint32_t> rank;
    rank.reserve(lambda.terms.size());
    for (std::uint32_t i = 0; i < lambda.terms.size(); ++i)
        rank.emplace(lambda.terms[i], i);
    std::sort(out.begin(), out.end(),
              [&](const std::vector<TermId>& x, const std::vector<TermId>& y) {
                  for (std::size_t i = 0; i < x.size(); ++i)
                      if (x[i] != y[i]) return rank.at(x[i]) < rank.at(y[i]);
                  return false;
              });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

std::vector<GroundInstance> available_instances(Arena& a, const Theory& th,
                                                const TermSet& lambda) {
    std::vector<GroundInstance> out;
    for (std::size_t ai = 0; ai < th.axioms.size(); ++ai) {
        const SkolemizedFormula& sk = th.axioms[ai].sk;
        const std::vector<VarId>& fvs = sk.free_vars;

        bool ground_ok = true;
        std::vector<TermId> var_atoms;
        for (TermId t : atom_terms(a, sk.open)) {
            if (a.ground(t)) {
                if (!lambda.contains(t)) {
                    ground_ok = false;
                    break;
                }
            } else {
                var_atoms.push_back(t);
            }
        }
        if (!ground_ok) continue;

        if (fvs.empty()) {
            out.push_back({ai, {}, sk.open});
            continue;
        }

        double direct_cost = 1.0;
        for (std::size_t i = 0; i < fvs.size(); ++i)
            direct_cost *= static_cast<double>(lambda.size());

        std::vector<std::vector<TermId>> tuples;
        if (direct_cost <= 2e7) {
            // atoms become checkable once their last variable is assigned
            std::vector<std::vector<TermId>> atoms_by_pos(fvs.size());
            for (TermId t : var_atoms) {
                std::size_t last = 0;
                for (VarId v : a.term_vars(t))
                    for (std::size_t i = 0; i < fvs.size(); ++i)
                        if (fvs[i] == v) last = std::max(last, i);
                atoms_by_pos[last].push_back(t);
            }
            Binding b;
            std::vector<TermId> cur(fvs.size());
            enumerate_tuples(a, fvs, atoms_by_pos, lambda, 0, b, cur, tuples);
        } else {
            tuples = join_tuples(a, fvs, var_atoms, lambda);
        }

        for (std::vector<TermId>& tup : tuples) {
            std::unordered_map<VarId, TermId> sigma;
            for (std::size_t i = 0; i < fvs.size(); ++i)
                sigma.emplace(fvs[i], tup[i]);
            FormulaId inst = a.subst_formula(sk.open, sigma);
            out.push_back({ai, std::move(tup), inst});
        }
    }
    return out;
}

// ── Skolem hulls ─────────────────────────────────────────────────────────────

TermSet hull_step(Arena& a, const TermSet& lambda, const mpz_class& j,
                  const SkolemRegistry& reg,
                  const std::optional<std::vector<SkolemId>>& restrict_symbols,
                  std::string provenance) {
    std::vector<TermId> out = lambda.terms;
    out.reserve(lambda.size() * (2 * lambda.size() + 2) + 2);

    out.push_back(a.zero());
    for (TermId t : lambda.terms) out.push_back(a.succ(t));
    for (TermId t : lambda.terms)
        for (TermId s : lambda.terms) {
            out.push_back(a.add(t, s));
            out.push_back(a.mul(t, s));
        }

    std::vector<SkolemId> pool;
    if (restrict_symbols) {
        pool = *restrict_symbols;
    } else {
        pool.reserve(reg.size());
        for (const SkolemEntry& e : reg.entries()) pool.push_back(e.symbol);
    }
    for (SkolemId s : pool) {
        const SkolemEntry& e = reg.entry(s);
        if (e.body_code > j) continue;
        std::vector<TermId> tup(e.arity);
        auto apply = [&](auto&& self, std::size_t pos) -> void {
            if (pos == e.arity) {
                out.push_back(a.skolem(s, tup));
                return;
            }
            for (TermId t : lambda.terms) {
                tup[pos] = t;
                self(self, pos + 1);
            }
        };
        apply(apply, 0);
    }
    return make_term_set(a, std::move(out), std::move(provenance));
}

TermSet theory_hull(Arena& a, const TermSet& base, unsigned level,
                    const SkolemRegistry& reg, const Theory& t) {
    mpz_class j = theory_code_bound(reg, t);
    std::vector<SkolemId> pool = theory_symbols(a, t);
    TermSet cur = base;
    for (unsigned k = 1; k <= level; ++k)
        cur = hull_step(a, cur, j, reg, pool,
                        "hull level " + std::to_string(k));
    return cur;
}

}  // namespace hc
