// =============================================================================
// model.cpp
// =============================================================================
#include "hc/model.hpp"

#include <algorithm>
#include <string>

#include "hc/print.hpp"

namespace hc {

const FunctionTable* FiniteHerbrandModel::table(TermKind kind,
                                                SkolemId symbol) const {
    for (const FunctionTable& t : tables)
        if (t.kind == kind && (kind != TermKind::Skolem || t.symbol == symbol))
            return &t;
    return nullptr;
}

FiniteHerbrandModel extract_model(const Arena& a, const Evaluation& e,
                                  const TermSet& lambda) {
    FiniteHerbrandModel m;
    m.universe = e.blocks();

    auto table_of = [&](TermKind kind, SkolemId symbol) -> FunctionTable& {
        for (FunctionTable& t : m.tables)
            if (t.kind == kind &&
                (kind != TermKind::Skolem || t.symbol == symbol))
                return t;
        m.tables.push_back({kind, symbol, {}});
        return m.tables.back();
    };

    // visit members in sequence order so table discovery is deterministic
    for (const auto& block : m.universe) {
        for (TermId t : block) {
            const TermNode n = a.term(t);
            if (n.kind == TermKind::Var) continue;
            auto args = a.args(t);
            std::vector<std::uint32_t> key;
            key.reserve(n.arity);
            bool tabulable = true;
            for (TermId arg : args) {
                if (!lambda.contains(arg)) {
                    tabulable = false;
                    break;
                }
                key.push_back(e.block_of(arg));
            }
            if (!tabulable) continue;
            SkolemId symbol = n.kind == TermKind::Skolem ? n.symbol : 0;
            FunctionTable& table = table_of(n.kind, symbol);
            auto [it, fresh] = table.entries.emplace(key, e.block_of(t));
            if (!fresh && it->second != e.block_of(t))
                throw DomainError(
                    "function table entry disagrees between representatives "
                    "at '" +
                    term_text(a, t) + "'");
        }
    }

    // deterministic table order: base symbols first, then Skolem symbols
    std::sort(m.tables.begin(), m.tables.end(),
              [](const FunctionTable& x, const FunctionTable& y) {
                  if (x.kind != y.kind)
                      return static_cast<int>(x.kind) < static_cast<int>(y.kind);
                  return x.symbol < y.symbol;
              });
    return m;
}

std::optional<std::uint32_t> model_value(const Arena& a,
                                         const FiniteHerbrandModel& m,
                                         const Evaluation& e, TermId t) {
    if (e.in_domain(t)) return e.block_of(t);
    const TermNode n = a.term(t);
    if (n.kind == TermKind::Var) return std::nullopt;
    std::vector<std::uint32_t> key;
    key.reserve(n.arity);
    for (TermId arg : a.args(t)) {
        auto v = model_value(a, m, e, arg);
        if (!v) return std::nullopt;
        key.push_back(*v);
    }
    SkolemId symbol = n.kind == TermKind::Skolem ? n.symbol : 0;
    const FunctionTable* table = m.table(n.kind, symbol);
    if (!table) return std::nullopt;
    auto it = table->entries.find(key);
    if (it == table->entries.end()) return std::nullopt;
    return it->second;
}

bool model_satisfies(const Arena& a, const FiniteHerbrandModel& m,
                     const Evaluation& e, FormulaId f) {
    const FormulaNode n = a.formula(f);
    switch (n.kind) {
        case FormulaKind::Eq:
        case FormulaKind::Le: {
            auto l = model_value(a, m, e, n.t0);
            auto r = model_value(a, m, e, n.t1);
            if (!l || !r)
                throw DomainError("term '" +
                                  term_text(a, !l ? n.t0 : n.t1) +
                                  "' has no value in the model");
            return n.kind == FormulaKind::Eq ? *l == *r : *l <= *r;
        }
        case FormulaKind::Not:
            return !model_satisfies(a, m, e, n.f0);
        case FormulaKind::And:
            return model_satisfies(a, m, e, n.f0) &&
                   model_satisfies(a, m, e, n.f1);
        case FormulaKind::Or:
            return model_satisfies(a, m, e, n.f0) ||
                   model_satisfies(a, m, e, n.f1);
        case FormulaKind::Implies:
            return !model_satisfies(a, m, e, n.f0) ||
                   model_satisfies(a, m, e, n.f1);
        default:
            throw DomainError("model truth is defined for open formulas");
    }
}

}  // namespace hc
