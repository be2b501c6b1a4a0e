#include "hc/arena.hpp"

#include <algorithm>
#include <functional>

#include "hc/code_digits.hpp"

namespace hc {

namespace {

inline std::size_t hash_mix(std::size_t h, std::size_t v) {
    // boost-style combine
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::uint8_t term_tag(TermKind k) {
    switch (k) {
        case TermKind::Succ: return digits::SUCC;
        case TermKind::Add: return digits::ADD;
        case TermKind::Mul: return digits::MUL;
        case TermKind::Var: return digits::VAR;
        case TermKind::Skolem: return digits::SKOLEM;
        default: return digits::ZERO;
    }
}

}  // namespace

std::size_t Arena::TermKeyHash::operator()(const TermKey& k) const {
    std::size_t h = hash_mix(static_cast<std::size_t>(k.kind) * 31, k.symbol);
    for (TermId a : k.args) h = hash_mix(h, a);
    return h;
}

std::size_t Arena::FormulaKeyHash::operator()(const FormulaKey& k) const {
    std::size_t h = static_cast<std::size_t>(k.kind) * 131;
    h = hash_mix(h, k.var);
    h = hash_mix(h, k.t0);
    h = hash_mix(h, k.t1);
    h = hash_mix(h, k.f0);
    return hash_mix(h, k.f1);
}

// ── variables and Skolem declarations ────────────────────────────────────────

VarId Arena::var_id(std::string_view name) {
    if (name.empty()) throw DomainError("variable name must be nonempty");
    auto it = var_index_.find(std::string(name));
    if (it != var_index_.end()) return it->second;
    VarId v = static_cast<VarId>(var_names_.size());
    var_names_.emplace_back(name);
    var_index_.emplace(var_names_.back(), v);
    return v;
}

SkolemId Arena::declare_skolem(std::uint32_t arity) {
    SkolemId s = static_cast<SkolemId>(skolem_arities_.size());
    skolem_arities_.push_back(arity);
    return s;
}

// ── term interning ───────────────────────────────────────────────────────────

TermId Arena::intern_term(TermKind kind, std::uint32_t symbol,
                          std::span<const TermId> args) {
    TermKey key{kind, symbol, {args.begin(), args.end()}};
    auto it = term_index_.find(key);
    if (it != term_index_.end()) return it->second;

    bool ground = kind != TermKind::Var;
    std::uint64_t len = 0;
    switch (kind) {
        case TermKind::Zero: len = 1; break;
        case TermKind::Succ:
        case TermKind::Add:
        case TermKind::Mul: len = 3; break;
        case TermKind::Var:
        case TermKind::Skolem: len = 3 + digits::nat_len(symbol); break;
    }
    for (TermId a : args) {
        ground = ground && terms_[a].ground;
        len += terms_[a].code_len;
    }

    TermId id = static_cast<TermId>(terms_.size());
    TermNode node{kind, ground, symbol, static_cast<std::uint32_t>(args.size()),
                  static_cast<std::uint32_t>(arg_pool_.size()), len};
    arg_pool_.insert(arg_pool_.end(), args.begin(), args.end());
    terms_.push_back(node);
    term_index_.emplace(std::move(key), id);
    return id;
}

TermId Arena::find_term(TermKind kind, std::uint32_t symbol,
                        std::span<const TermId> args) const {
    TermKey key{kind, symbol, {args.begin(), args.end()}};
    auto it = term_index_.find(key);
    return it == term_index_.end() ? k_invalid : it->second;
}

TermId Arena::var(VarId v) {
    if (v >= var_names_.size()) throw DomainError("unknown variable id");
    return intern_term(TermKind::Var, v, {});
}
TermId Arena::zero() { return intern_term(TermKind::Zero, 0, {}); }
TermId Arena::succ(TermId t) {
    TermId a[1] = {t};
    return intern_term(TermKind::Succ, 0, a);
}
TermId Arena::add(TermId l, TermId r) {
    TermId a[2] = {l, r};
    return intern_term(TermKind::Add, 0, a);
}
TermId Arena::mul(TermId l, TermId r) {
    TermId a[2] = {l, r};
    return intern_term(TermKind::Mul, 0, a);
}
TermId Arena::skolem(SkolemId s, std::span<const TermId> args) {
    if (s >= skolem_arities_.size()) throw DomainError("unknown Skolem symbol");
    if (args.size() != skolem_arities_[s])
        throw DomainError("Skolem application arity mismatch");
    return intern_term(TermKind::Skolem, s, args);
}
TermId Arena::numeral(std::uint64_t n) {
    TermId t = zero();
    for (std::uint64_t i = 0; i < n; ++i) t = succ(t);
    return t;
}

std::span<const TermId> Arena::args(TermId t) const {
    const TermNode& n = term(t);
    return {arg_pool_.data() + n.args_begin, n.arity};
}

// ── formula interning ────────────────────────────────────────────────────────

FormulaId Arena::intern_formula(FormulaKind kind, VarId var, TermId t0,
                                TermId t1, FormulaId f0, FormulaId f1) {
    FormulaKey key{kind, var, t0, t1, f0, f1};
    auto it = formula_index_.find(key);
    if (it != formula_index_.end()) return it->second;

    std::uint64_t len = 3;
    switch (kind) {
        case FormulaKind::Eq:
        case FormulaKind::Le:
            len += terms_[t0].code_len + terms_[t1].code_len;
            break;
        case FormulaKind::Not: len += formulas_[f0].code_len; break;
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Implies:
            len += formulas_[f0].code_len + formulas_[f1].code_len;
            break;
        case FormulaKind::Forall:
        case FormulaKind::Exists:
            len += digits::nat_len(var) + formulas_[f0].code_len;
            break;
        case FormulaKind::BoundedForall:
        case FormulaKind::BoundedExists:
            len += digits::nat_len(var) + terms_[t0].code_len +
                   formulas_[f0].code_len;
            break;
    }

    FormulaId id = static_cast<FormulaId>(formulas_.size());
    formulas_.push_back(FormulaNode{kind, var, t0, t1, f0, f1, len});
    formula_index_.emplace(key, id);
    return id;
}

FormulaId Arena::eq(TermId l, TermId r) {
    return intern_formula(FormulaKind::Eq, k_invalid, l, r, k_invalid, k_invalid);
}
FormulaId Arena::le(TermId l, TermId r) {
    return intern_formula(FormulaKind::Le, k_invalid, l, r, k_invalid, k_invalid);
}
FormulaId Arena::not_(FormulaId f) {
    return intern_formula(FormulaKind::Not, k_invalid, k_invalid, k_invalid, f,
                          k_invalid);
}
FormulaId Arena::and_(FormulaId l, FormulaId r) {
    return intern_formula(FormulaKind::And, k_invalid, k_invalid, k_invalid, l, r);
}
FormulaId Arena::or_(FormulaId l, FormulaId r) {
    return intern_formula(FormulaKind::Or, k_invalid, k_invalid, k_invalid, l, r);
}
FormulaId Arena::implies(FormulaId l, FormulaId r) {
    return intern_formula(FormulaKind::Implies, k_invalid, k_invalid, k_invalid,
                          l, r);
}
FormulaId Arena::forall(VarId v, FormulaId body) {
    return intern_formula(FormulaKind::Forall, v, k_invalid, k_invalid, body,
                          k_invalid);
}
FormulaId Arena::exists(VarId v, FormulaId body) {
    return intern_formula(FormulaKind::Exists, v, k_invalid, k_invalid, body,
                          k_invalid);
}
FormulaId Arena::bounded_forall(VarId v, TermId bound, FormulaId body) {
    return intern_formula(FormulaKind::BoundedForall, v, bound, k_invalid, body,
                          k_invalid);
}
FormulaId Arena::bounded_exists(VarId v, TermId bound, FormulaId body) {
    return intern_formula(FormulaKind::BoundedExists, v, bound, k_invalid, body,
                          k_invalid);
}

// ── structural utilities ─────────────────────────────────────────────────────

std::size_t Arena::term_tree_size(TermId t) const {
    std::size_t n = 1;
    for (TermId a : args(t)) n += term_tree_size(a);
    return n;
}

bool Arena::contains_subterm(TermId haystack, TermId needle) const {
    if (haystack == needle) return true;
    for (TermId a : args(haystack))
        if (contains_subterm(a, needle)) return true;
    return false;
}

void Arena::collect_subterms(TermId t, std::vector<TermId>& out) const {
    out.push_back(t);
    for (TermId a : args(t)) collect_subterms(a, out);
}

std::vector<VarId> Arena::term_vars(TermId t) const {
    std::vector<VarId> out;
    std::function<void(TermId)> walk = [&](TermId u) {
        const TermNode& n = term(u);
        if (n.kind == TermKind::Var) {
            if (std::find(out.begin(), out.end(), n.symbol) == out.end())
                out.push_back(n.symbol);
            return;
        }
        for (TermId a : args(u)) walk(a);
    };
    walk(t);
    return out;
}

std::vector<VarId> Arena::free_vars(FormulaId f) const {
    std::vector<VarId> out;
    std::vector<VarId> bound;
    auto note = [&](VarId v) {
        if (std::find(bound.begin(), bound.end(), v) != bound.end()) return;
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    };
    std::function<void(TermId)> walk_t = [&](TermId u) {
        const TermNode& n = term(u);
        if (n.kind == TermKind::Var) {
            note(n.symbol);
            return;
        }
        for (TermId a : args(u)) walk_t(a);
    };
    std::function<void(FormulaId)> walk = [&](FormulaId g) {
        const FormulaNode& n = formula(g);
        switch (n.kind) {
            case FormulaKind::Eq:
            case FormulaKind::Le:
                walk_t(n.t0);
                walk_t(n.t1);
                break;
            case FormulaKind::Not: walk(n.f0); break;
            case FormulaKind::And:
            case FormulaKind::Or:
            case FormulaKind::Implies:
                walk(n.f0);
                walk(n.f1);
                break;
            case FormulaKind::Forall:
            case FormulaKind::Exists:
                bound.push_back(n.var);
                walk(n.f0);
                bound.pop_back();
                break;
            case FormulaKind::BoundedForall:
            case FormulaKind::BoundedExists:
                walk_t(n.t0);  // bound term is outside the binder's scope
                bound.push_back(n.var);
                walk(n.f0);
                bound.pop_back();
                break;
        }
    };
    walk(f);
    return out;
}

TermId Arena::subst_term(TermId t,
                         const std::unordered_map<VarId, TermId>& sigma) {
    // copy the node and argument slice: recursion interns nodes, which may
    // reallocate the underlying vectors
    const TermNode n = term(t);
    switch (n.kind) {
        case TermKind::Var: {
            auto it = sigma.find(n.symbol);
            return it == sigma.end() ? t : it->second;
        }
        case TermKind::Zero: return t;
        case TermKind::Succ: return succ(subst_term(args(t)[0], sigma));
        case TermKind::Add: {
            std::vector<TermId> a(args(t).begin(), args(t).end());
            TermId l = subst_term(a[0], sigma);
            return add(l, subst_term(a[1], sigma));
        }
        case TermKind::Mul: {
            std::vector<TermId> a(args(t).begin(), args(t).end());
            TermId l = subst_term(a[0], sigma);
            return mul(l, subst_term(a[1], sigma));
        }
        case TermKind::Skolem: {
            std::vector<TermId> a(args(t).begin(), args(t).end());
            std::vector<TermId> na;
            na.reserve(n.arity);
            for (TermId c : a) na.push_back(subst_term(c, sigma));
            return skolem(n.symbol, na);
        }
    }
    throw DomainError("unreachable term kind");
}

FormulaId Arena::subst_formula(FormulaId f,
                               const std::unordered_map<VarId, TermId>& sigma) {
    const FormulaNode n = formula(f);
    switch (n.kind) {
        case FormulaKind::Eq: {
            TermId l = subst_term(n.t0, sigma);
            return eq(l, subst_term(n.t1, sigma));
        }
        case FormulaKind::Le: {
            TermId l = subst_term(n.t0, sigma);
            return le(l, subst_term(n.t1, sigma));
        }
        case FormulaKind::Not: return not_(subst_formula(n.f0, sigma));
        case FormulaKind::And: {
            FormulaId l = subst_formula(n.f0, sigma);
            return and_(l, subst_formula(n.f1, sigma));
        }
        case FormulaKind::Or: {
            FormulaId l = subst_formula(n.f0, sigma);
            return or_(l, subst_formula(n.f1, sigma));
        }
        case FormulaKind::Implies: {
            FormulaId l = subst_formula(n.f0, sigma);
            return implies(l, subst_formula(n.f1, sigma));
        }
        case FormulaKind::Forall:
        case FormulaKind::Exists:
        case FormulaKind::BoundedForall:
        case FormulaKind::BoundedExists: {
            auto inner = sigma;
            inner.erase(n.var);  // binder shadows the substituted variable
            TermId bound =
                (n.kind == FormulaKind::BoundedForall ||
                 n.kind == FormulaKind::BoundedExists)
                    ? subst_term(n.t0, sigma)
                    : n.t0;
            FormulaId body = subst_formula(n.f0, inner);
            switch (n.kind) {
                case FormulaKind::Forall: return forall(n.var, body);
                case FormulaKind::Exists: return exists(n.var, body);
                case FormulaKind::BoundedForall:
                    return bounded_forall(n.var, bound, body);
                default: return bounded_exists(n.var, bound, body);
            }
        }
    }
    throw DomainError("unreachable formula kind");
}

// ── canonical code order ─────────────────────────────────────────────────────

namespace {

// Lexicographic order of the digit substrings NAT_BEGIN payload NAT_END.
// This differs from numeric order when the payload lengths differ: the
// shorter payload hits its NAT_END (a low digit) while the longer one still
// has payload digits (high), so e.g. the string of 16 sorts before that of 5.
int nat_digit_cmp(std::uint32_t a, std::uint32_t b) {
    if (a == b) return 0;
    std::uint8_t da[9], db[9];
    int la = 0, lb = 0;
    for (std::uint32_t v = a; v > 0 || la == 0; v /= 16)
        da[la++] = static_cast<std::uint8_t>(v % 16);
    for (std::uint32_t v = b; v > 0 || lb == 0; v /= 16)
        db[lb++] = static_cast<std::uint8_t>(v % 16);
    // digits were produced LSB-first; walk them MSB-first
    for (int i = 1; i <= la && i <= lb; ++i) {
        if (da[la - i] != db[lb - i])
            return da[la - i] < db[lb - i] ? -1 : 1;
    }
    return la < lb ? -1 : 1;
}

// Lexicographic comparison of the digit strings of two distinct terms.  The
// strings of distinct nodes always differ before either ends (they are
// bracket-balanced and hence prefix-free), so pairwise child comparison is
// sound.
int cmp_lex(const Arena& A, TermId x, TermId y) {
    if (x == y) return 0;
    const TermNode& nx = A.term(x);
    const TermNode& ny = A.term(y);
    std::uint8_t hx = nx.kind == TermKind::Zero ? digits::ZERO : digits::OPEN;
    std::uint8_t hy = ny.kind == TermKind::Zero ? digits::ZERO : digits::OPEN;
    if (hx != hy) return hx < hy ? -1 : 1;
    if (hx == digits::ZERO) return 0;
    std::uint8_t tx = term_tag(nx.kind), ty = term_tag(ny.kind);
    if (tx != ty) return tx < ty ? -1 : 1;
    if (nx.kind == TermKind::Var || nx.kind == TermKind::Skolem) {
        if (nx.symbol != ny.symbol) return nat_digit_cmp(nx.symbol, ny.symbol);
    }
    auto ax = A.args(x), ay = A.args(y);
    for (std::size_t i = 0; i < ax.size(); ++i) {
        int r = cmp_lex(A, ax[i], ay[i]);
        if (r != 0) return r;
    }
    return 0;
}

}  // namespace

int term_code_cmp(const Arena& a, TermId x, TermId y) {
    if (x == y) return 0;
    std::uint64_t lx = a.term(x).code_len, ly = a.term(y).code_len;
    if (lx != ly) return lx < ly ? -1 : 1;
    return cmp_lex(a, x, y);
}

}  // namespace hc
